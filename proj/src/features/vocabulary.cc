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

#include "features/vocabulary.h"

#include <algorithm>
#include <map>
#include <set>

#include "common/error.h"
#include "common/hash.h"

namespace amhs::features {

Vocabulary Vocabulary::Build(std::span<const textnorm::CleanDocument> docs,
                             int min_df) {
  if (docs.empty()) Fail(ErrorCode::kInvalidArgument, "empty corpus");
  if (min_df < 1) Fail(ErrorCode::kInvalidArgument, "min_df must be >= 1");
  std::map<std::string, int> df;
  for (const auto &doc : docs) {
    std::set<std::string> unique(doc.tokens.begin(), doc.tokens.end());
    for (const auto &token : unique) ++df[token];
  }
  std::vector<std::pair<std::string, int>> kept;
  for (auto &[token, count] : df) {
    if (count >= min_df) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
    return a.second > b.second;
  });
  Vocabulary v;
  v.num_docs_ = docs.size();
  v.min_df_ = min_df;
  v.tokens_ = {"<pad>", "<unk>"};
  v.df_ = {0, 0};
  for (auto &[token, count] : kept) {
    v.tokens_.push_back(token);
    v.df_.push_back(count);
  }
  v.Finish();
  return v;
}

void Vocabulary::Finish() {
  index_.clear();
  std::string digest_input = std::to_string(num_docs_) + "\n";
  for (size_t i = kNumSpecials; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<int>(i));
    digest_input += tokens_[i] + "\t" + std::to_string(df_[i]) + "\n";
  }
  hash_ = Sha256Hex(digest_input);
}

int Vocabulary::Index(const std::string &token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnknown : it->second;
}

nlohmann::ordered_json Vocabulary::ToJson() const {
  nlohmann::ordered_json j;
  j["num_docs"] = num_docs_;
  j["min_df"] = min_df_;
  j["tokens"] = std::vector<std::string>(tokens_.begin() + kNumSpecials,
                                         tokens_.end());
  j["df"] = std::vector<int>(df_.begin() + kNumSpecials, df_.end());
  return j;
}

Vocabulary Vocabulary::FromJson(const nlohmann::ordered_json &j) {
  Vocabulary v;
  try {
    v.num_docs_ = j.at("num_docs").get<size_t>();
    v.min_df_ = j.at("min_df").get<int>();
    auto tokens = j.at("tokens").get<std::vector<std::string>>();
    auto df = j.at("df").get<std::vector<int>>();
    if (tokens.size() != df.size()) {
      Fail(ErrorCode::kParse, "vocabulary tokens/df length mismatch");
    }
    v.tokens_ = {"<pad>", "<unk>"};
    v.df_ = {0, 0};
    v.tokens_.insert(v.tokens_.end(), tokens.begin(), tokens.end());
    v.df_.insert(v.df_.end(), df.begin(), df.end());
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kParse, std::string("bad vocabulary: ") + e.what());
  }
  v.Finish();
  if (v.index_.size() != v.num_terms()) {
    Fail(ErrorCode::kParse, "vocabulary has duplicate tokens");
  }
  return v;
}

}  // namespace amhs::features
