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

#include "ingest/filters.h"

#include <unicode/uchar.h>

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "common/error.h"
#include "common/hash.h"
#include "textnorm/utf8.h"

namespace amhs::ingest {

std::vector<RawPost> Consolidate(
    const std::vector<std::vector<RawPost>> &streams,
    const textnorm::Normalizer &norm) {
  std::vector<const RawPost *> all;
  for (const auto &stream : streams) {
    for (const auto &post : stream) all.push_back(&post);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const RawPost *a, const RawPost *b) {
                     if (a->created_at != b->created_at) {
                       return a->created_at < b->created_at;
                     }
                     return a->id < b->id;
                   });
  std::unordered_set<std::string> seen_text;
  std::unordered_set<std::string> seen_id;
  std::vector<RawPost> out;
  for (const RawPost *post : all) {
    std::string key = Sha256Hex(norm.Normalize(post->text));
    if (seen_text.count(key) || seen_id.count(post->id)) continue;
    seen_text.insert(std::move(key));
    seen_id.insert(post->id);
    out.push_back(*post);
  }
  return out;
}

std::optional<double> EthiopicFractionDetector::AmharicScore(
    std::string_view text) const {
  size_t alphabetic = 0;
  size_t ethiopic = 0;
  for (char32_t c : textnorm::DecodeUtf8(text)) {
    if (!u_isUAlphabetic(static_cast<UChar32>(c))) continue;
    ++alphabetic;
    if (textnorm::IsEthiopicBlock(c)) ++ethiopic;
  }
  if (alphabetic == 0) return std::nullopt;
  return static_cast<double>(ethiopic) / static_cast<double>(alphabetic);
}

std::vector<RawPost> LanguageFilter(const std::vector<RawPost> &posts,
                                    double threshold,
                                    const LanguageDetector &detector,
                                    const textnorm::Normalizer &norm) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "language threshold must be in [0,1]");
  }
  std::vector<RawPost> out;
  for (const auto &post : posts) {
    auto score = detector.AmharicScore(norm.Normalize(post.text));
    if (score && *score >= threshold) out.push_back(post);
  }
  return out;
}

KeywordFilterResult KeywordFilter(const std::vector<RawPost> &posts,
                                  const KeywordLexicon &lexicon,
                                  const textnorm::Normalizer &norm) {
  if (lexicon.empty()) {
    Fail(ErrorCode::kInvalidArgument, "keyword lexicon is empty");
  }
  KeywordFilterResult result;
  for (const auto &post : posts) {
    std::set<Theme> themes;
    for (const auto &token : textnorm::Tokenize(norm.Normalize(post.text))) {
      if (const auto *t = lexicon.ThemesOf(token)) {
        themes.insert(t->begin(), t->end());
      }
    }
    if (themes.empty()) continue;
    RawPost kept = post;
    kept.keyword_themes.clear();
    for (Theme theme : themes) {
      kept.keyword_themes.emplace_back(ThemeName(theme));
      ++result.theme_counts[theme];
    }
    result.kept.push_back(std::move(kept));
  }
  return result;
}

}  // namespace amhs::ingest
