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

// Subword word embeddings: skip-gram with negative sampling where each word
// is represented by its own vector plus the vectors of its character
// n-grams (computed over codepoints of "<word>").

#ifndef AMHS_FEATURES_EMBEDDINGS_H_
#define AMHS_FEATURES_EMBEDDINGS_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "textnorm/normalizer.h"

namespace amhs::features {

struct EmbeddingConfig {
  int dim = 100;
  int epochs = 5;
  int min_n = 3;
  int max_n = 6;
  int negatives = 5;
  int window = 5;
  int min_count = 1;
  double learning_rate = 0.05;
  uint64_t seed = 1;
};

// Character n-grams of "<token>" for n in [min_n, max_n], in order of start
// position then length. Codepoint based.
std::vector<std::string> CharNgrams(const std::string &token, int min_n,
                                    int max_n);

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dim, int min_n, int max_n);

  int dim() const { return dim_; }
  int min_n() const { return min_n_; }
  int max_n() const { return max_n_; }

  void AddWord(const std::string &token, std::vector<float> vec);
  void AddNgram(const std::string &ngram, std::vector<float> vec);

  size_t num_words() const { return words_.size(); }
  size_t num_ngrams() const { return ngrams_.size(); }
  const std::vector<std::string> &words() const { return words_; }

  const std::vector<float> *WordVector(const std::string &token) const;
  const std::vector<float> *NgramVector(const std::string &ngram) const;

  // Stored vector for known words; for others the mean of the stored
  // vectors of its n-grams, or zeros when none are stored.
  std::vector<float> Vector(const std::string &token) const;

  // Text format: "count dim" then "token v1 ... vd" per line. Word rows
  // come first in insertion order; n-gram rows follow sorted, their token
  // field prefixed with "ngram:" (normalized tokens never contain ':').
  std::string Serialize() const;
  static EmbeddingTable Parse(const std::string &text, int min_n = 3,
                              int max_n = 6);

  void Save(const std::string &path) const;
  static EmbeddingTable Load(const std::string &path, int min_n = 3,
                             int max_n = 6);

 private:
  int dim_ = 0;
  int min_n_ = 3;
  int max_n_ = 6;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::vector<float>> word_vectors_;
  std::unordered_map<std::string, std::vector<float>> ngram_vectors_;
  std::vector<std::string> ngrams_;
};

// Single-threaded and deterministic for a fixed config.seed. Throws
// Error(kInvalidArgument) on dim <= 0 or an empty corpus.
EmbeddingTable TrainEmbeddings(std::span<const textnorm::CleanDocument> docs,
                               const EmbeddingConfig &config);

double Cosine(std::span<const float> a, std::span<const float> b);

}  // namespace amhs::features

#endif  // AMHS_FEATURES_EMBEDDINGS_H_
