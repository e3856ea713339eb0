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

#include "ingest/lexicon.h"

#include "common/error.h"
#include "common/fileutil.h"
#include "textnorm/normalizer.h"

namespace amhs::ingest {
namespace {

constexpr std::string_view kThemeNames[] = {"hate", "offensive", "religion",
                                            "gender"};

}  // namespace

std::string_view ThemeName(Theme theme) {
  return kThemeNames[static_cast<int>(theme)];
}

std::optional<Theme> ParseTheme(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kThemeNames[i] == name) return static_cast<Theme>(i);
  }
  return std::nullopt;
}

void KeywordLexicon::Add(std::string_view surface, Theme theme,
                         const textnorm::Normalizer &norm) {
  std::string canonical = norm.Normalize(surface);
  if (canonical.empty() || canonical.find(' ') != std::string::npos) {
    Fail(ErrorCode::kInvalidArgument,
         "lexicon entry must normalize to exactly one token: \"" +
             std::string(surface) + "\"");
  }
  auto &themes = index_[canonical];
  if (!themes.insert(theme).second) return;
  entries_.push_back({std::move(canonical), theme});
}

KeywordLexicon KeywordLexicon::FromFile(const std::string &path,
                                        const textnorm::Normalizer &norm) {
  KeywordLexicon lexicon;
  auto lines = ReadLines(path);
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    std::optional<Theme> theme;
    if (tab != std::string::npos) theme = ParseTheme(line.substr(tab + 1));
    if (!theme) {
      Fail(ErrorCode::kParse, path + ":" + std::to_string(n + 1) +
                                  ": expected surface_form<TAB>theme");
    }
    lexicon.Add(std::string_view(line).substr(0, tab), *theme, norm);
  }
  return lexicon;
}

const std::set<Theme> *KeywordLexicon::ThemesOf(
    const std::string &token) const {
  auto it = index_.find(token);
  return it == index_.end() ? nullptr : &it->second;
}

}  // namespace amhs::ingest
