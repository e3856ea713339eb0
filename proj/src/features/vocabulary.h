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

#ifndef AMHS_FEATURES_VOCABULARY_H_
#define AMHS_FEATURES_VOCABULARY_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "textnorm/normalizer.h"

namespace amhs::features {

// Token index with document frequencies. Index 0 is padding and 1 the
// unknown token; real tokens follow, ordered by decreasing df and then by
// token bytes.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnknown = 1;
  static constexpr int kNumSpecials = 2;

  // Throws Error(kInvalidArgument) on an empty corpus or min_df < 1.
  static Vocabulary Build(std::span<const textnorm::CleanDocument> docs,
                          int min_df);

  // Index of `token`, or kUnknown.
  int Index(const std::string &token) const;
  bool Contains(const std::string &token) const {
    return index_.count(token) != 0;
  }

  const std::string &Token(int index) const { return tokens_.at(index); }
  int Df(int index) const { return df_.at(index); }

  // Including the two specials.
  size_t size() const { return tokens_.size(); }
  size_t num_terms() const { return tokens_.size() - kNumSpecials; }
  // Training documents the frequencies were counted over.
  size_t num_docs() const { return num_docs_; }
  int min_df() const { return min_df_; }

  // Stable digest of tokens, frequencies and document count.
  const std::string &hash() const { return hash_; }

  nlohmann::ordered_json ToJson() const;
  static Vocabulary FromJson(const nlohmann::ordered_json &j);

 private:
  void Finish();

  std::vector<std::string> tokens_;
  std::vector<int> df_;
  std::unordered_map<std::string, int> index_;
  size_t num_docs_ = 0;
  int min_df_ = 1;
  std::string hash_;
};

}  // namespace amhs::features

#endif  // AMHS_FEATURES_VOCABULARY_H_
