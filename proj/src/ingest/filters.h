// Copyright 2026 The amhs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMHS_INGEST_FILTERS_H_
#define AMHS_INGEST_FILTERS_H_

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ingest/lexicon.h"
#include "ingest/raw_post.h"
#include "textnorm/normalizer.h"

namespace amhs::ingest {

// Merges streams, sorts by (created_at, id) and drops posts whose normalized
// text hashes equal an earlier post's, and posts repeating an earlier id.
std::vector<RawPost> Consolidate(
    const std::vector<std::vector<RawPost>> &streams,
    const textnorm::Normalizer &norm = textnorm::DefaultNormalizer());

class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  // Amharic score in [0, 1], or nullopt when the text has no signal to
  // classify (such texts are rejected).
  virtual std::optional<double> AmharicScore(std::string_view text) const = 0;
};

// Fraction of alphabetic codepoints inside the Ethiopic block U+1200-U+137F.
class EthiopicFractionDetector : public LanguageDetector {
 public:
  std::optional<double> AmharicScore(std::string_view text) const override;
};

inline constexpr double kDefaultLanguageThreshold = 0.6;

// Keeps posts whose score is >= threshold. The detector sees normalized text,
// so URLs and @-mentions do not count as Latin-script content.
std::vector<RawPost> LanguageFilter(
    const std::vector<RawPost> &posts,
    double threshold = kDefaultLanguageThreshold,
    const LanguageDetector &detector = EthiopicFractionDetector(),
    const textnorm::Normalizer &norm = textnorm::DefaultNormalizer());

struct KeywordFilterResult {
  std::vector<RawPost> kept;
  // Number of kept posts matching at least one entry of each theme.
  std::map<Theme, size_t> theme_counts;
};

// Keeps posts with at least one whole-token lexicon match after
// normalization; fills RawPost::keyword_themes on the survivors.
KeywordFilterResult KeywordFilter(
    const std::vector<RawPost> &posts, const KeywordLexicon &lexicon,
    const textnorm::Normalizer &norm = textnorm::DefaultNormalizer());

}  // namespace amhs::ingest

#endif  // AMHS_INGEST_FILTERS_H_
