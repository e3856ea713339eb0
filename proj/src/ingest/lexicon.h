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

#ifndef AMHS_INGEST_LEXICON_H_
#define AMHS_INGEST_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace amhs::textnorm {
class Normalizer;
}

namespace amhs::ingest {

enum class Theme { kHate, kOffensive, kReligion, kGender };

std::string_view ThemeName(Theme theme);
std::optional<Theme> ParseTheme(std::string_view name);

// Keyword list used to select annotation candidates. Surface forms are kept
// in normalized form so matching is a plain token comparison.
class KeywordLexicon {
 public:
  struct Entry {
    std::string surface_form;
    Theme theme;
  };

  // `surface` is normalized with `norm`; entries that normalize to nothing or
  // to more than one token are rejected. Duplicate pairs are ignored.
  void Add(std::string_view surface, Theme theme,
           const textnorm::Normalizer &norm);

  // `surface_form<TAB>theme` per line; blank lines and '#' comments skipped.
  static KeywordLexicon FromFile(const std::string &path,
                                 const textnorm::Normalizer &norm);

  const std::vector<Entry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Themes attached to a normalized token (empty if not in the lexicon).
  const std::set<Theme> *ThemesOf(const std::string &token) const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::set<Theme>> index_;
};

}  // namespace amhs::ingest

#endif  // AMHS_INGEST_LEXICON_H_
