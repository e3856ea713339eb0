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

#ifndef AMHS_INGEST_RAW_POST_H_
#define AMHS_INGEST_RAW_POST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/timeutil.h"

namespace amhs::ingest {

enum class Source { kTwitter, kFacebook, kYoutube, kFile };

std::string_view SourceName(Source source);
std::optional<Source> ParseSource(std::string_view name);

struct RawPost {
  std::string id;
  Source source = Source::kFile;
  std::string author_hash;
  std::string text;
  UtcTime created_at{};
  // Themes of matched lexicon entries; filled by KeywordFilter, sorted.
  std::vector<std::string> keyword_themes;
};

// Parses one record line of the fixture/pool format. Returns nullopt and
// sets `why` when the line is not a valid record (unknown source, empty text,
// bad timestamp, missing or mistyped field, extra fields).
std::optional<RawPost> ParseRawPost(std::string_view line, std::string *why,
                                    bool allow_themes = false);

// One compact JSON object with fields in schema order. `with_themes` adds
// the pool-format "keyword_themes" array.
std::string SerializeRawPost(const RawPost &post, bool with_themes);

}  // namespace amhs::ingest

#endif  // AMHS_INGEST_RAW_POST_H_
