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

#include "ingest/raw_post.h"

#include <json.hpp>

namespace amhs::ingest {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kSourceNames[] = {"twitter", "facebook", "youtube",
                                             "file"};

bool StringField(const ordered_json &j, const char *name, std::string *out,
                 std::string *why) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) {
    *why = std::string("missing or non-string field \"") + name + "\"";
    return false;
  }
  *out = it->get<std::string>();
  return true;
}

}  // namespace

std::string_view SourceName(Source source) {
  return kSourceNames[static_cast<int>(source)];
}

std::optional<Source> ParseSource(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kSourceNames[i] == name) return static_cast<Source>(i);
  }
  return std::nullopt;
}

std::optional<RawPost> ParseRawPost(std::string_view line, std::string *why,
                                    bool allow_themes) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    *why = "not a JSON object";
    return std::nullopt;
  }
  for (const auto &item : j.items()) {
    const std::string &key = item.key();
    if (key != "id" && key != "source" && key != "author_hash" &&
        key != "text" && key != "created_at" &&
        !(allow_themes && key == "keyword_themes")) {
      *why = "unexpected field \"" + key + "\"";
      return std::nullopt;
    }
  }
  RawPost post;
  std::string source, created;
  if (!StringField(j, "id", &post.id, why) ||
      !StringField(j, "source", &source, why) ||
      !StringField(j, "author_hash", &post.author_hash, why) ||
      !StringField(j, "text", &post.text, why) ||
      !StringField(j, "created_at", &created, why)) {
    return std::nullopt;
  }
  if (post.id.empty()) {
    *why = "empty id";
    return std::nullopt;
  }
  auto parsed_source = ParseSource(source);
  if (!parsed_source) {
    *why = "unknown source \"" + source + "\"";
    return std::nullopt;
  }
  post.source = *parsed_source;
  if (post.text.empty()) {
    *why = "empty text";
    return std::nullopt;
  }
  auto ts = ParseRfc3339(created);
  if (!ts) {
    *why = "bad created_at \"" + created + "\"";
    return std::nullopt;
  }
  post.created_at = *ts;
  if (allow_themes) {
    auto it = j.find("keyword_themes");
    if (it != j.end()) {
      if (!it->is_array()) {
        *why = "keyword_themes must be an array";
        return std::nullopt;
      }
      for (const auto &theme : *it) {
        if (!theme.is_string()) {
          *why = "keyword_themes must hold strings";
          return std::nullopt;
        }
        post.keyword_themes.push_back(theme.get<std::string>());
      }
    }
  }
  return post;
}

std::string SerializeRawPost(const RawPost &post, bool with_themes) {
  ordered_json j;
  j["id"] = post.id;
  j["source"] = SourceName(post.source);
  j["author_hash"] = post.author_hash;
  j["text"] = post.text;
  j["created_at"] = FormatRfc3339(post.created_at);
  if (with_themes) j["keyword_themes"] = post.keyword_themes;
  return j.dump();
}

}  // namespace amhs::ingest
