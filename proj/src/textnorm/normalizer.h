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

// Amharic text cleaning. Normalize() applies, in order:
//
//   1. Unicode canonical composition (NFC)
//   2. homophone folding through a NormalizationTable
//   3. Ethiopic wordspace U+1361 to ASCII space
//   4. removal of URLs, @-mentions, hashtag sigils (tag text is kept), emoji,
//      punctuation and symbols (Latin and Ethiopic)
//   5. digit removal (any Unicode number, including Ethiopic numerals)
//   6. whitespace collapse and trim
//
// followed by a final NFC pass, since deletions in 4-5 can make combining
// sequences adjacent. The output is a fixed point of Normalize().

#ifndef AMHS_TEXTNORM_NORMALIZER_H_
#define AMHS_TEXTNORM_NORMALIZER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace amhs::textnorm {

struct CleanDocument {
  std::string id;
  std::string raw_text;
  std::string norm_text;
  std::vector<std::string> tokens;
};

// Codepoint -> canonical codepoint. Only non-canonical characters are stored;
// everything else maps to itself. No target may itself be a key.
class NormalizationTable {
 public:
  NormalizationTable() = default;

  // Homophone families {ሐ,ኀ,ኸ}→ሀ, ሠ→ሰ, ዐ→አ, ፀ→ጸ over all vowel orders.
  static NormalizationTable Default();

  // Reads `from<TAB>to` lines (one codepoint each side; '#' starts a comment
  // line). When `extend` is set the entries are added on top of Default().
  static NormalizationTable FromFile(const std::string &path,
                                     bool extend = true);

  // Throws Error(kInvalidArgument) if the pair would break idempotence.
  void Add(char32_t from, char32_t to);

  char32_t Map(char32_t c) const {
    auto it = map_.find(c);
    return it == map_.end() ? c : it->second;
  }

  bool IsFoldedAway(char32_t c) const { return map_.count(c) != 0; }

  const std::map<char32_t, char32_t> &entries() const { return map_; }

 private:
  std::map<char32_t, char32_t> map_;
};

class Normalizer {
 public:
  Normalizer() : Normalizer(NormalizationTable::Default()) {}
  explicit Normalizer(NormalizationTable table) : table_(std::move(table)) {}

  std::string Normalize(std::string_view text) const;

  CleanDocument Clean(std::string id, std::string raw_text) const;

  const NormalizationTable &table() const { return table_; }

 private:
  NormalizationTable table_;
};

// Shared default-table instance.
const Normalizer &DefaultNormalizer();

inline std::string Normalize(std::string_view text) {
  return DefaultNormalizer().Normalize(text);
}

// Splits normalized text on spaces. Never yields empty tokens.
std::vector<std::string> Tokenize(std::string_view norm_text);

// Codepoints Normalize() never emits: Ethiopic punctuation and wordspace.
bool IsRemovedEthiopicPunct(char32_t c);

}  // namespace amhs::textnorm

#endif  // AMHS_TEXTNORM_NORMALIZER_H_
