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

#ifndef AMHS_FEATURES_TFIDF_H_
#define AMHS_FEATURES_TFIDF_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "features/vocabulary.h"

namespace amhs::features {

// One sparse row: (column, weight) pairs sorted by column.
using SparseRow = std::vector<std::pair<int, double>>;

// Row-sparse document-term matrix. Column c corresponds to vocabulary index
// c + Vocabulary::kNumSpecials.
struct TfidfMatrix {
  size_t cols = 0;
  std::vector<SparseRow> rows;

  std::vector<double> DenseRow(size_t r) const;

  // "rows cols nnz" header, then one "row col value" triplet per line.
  std::string ToTriplets() const;
  static TfidfMatrix FromTriplets(const std::string &text);
};

// idf(t) = ln((1 + N) / (1 + df(t))) + 1 over the vocabulary's training
// documents.
double Idf(const Vocabulary &vocab, int index);

// weight(t, d) = count(t, d) * idf(t), rows scaled to unit L2 norm. Tokens
// outside the vocabulary are ignored; a document without known tokens gives
// an all-zero row.
TfidfMatrix Tfidf(std::span<const textnorm::CleanDocument> docs,
                  const Vocabulary &vocab);

SparseRow TfidfRow(const std::vector<std::string> &tokens,
                   const Vocabulary &vocab);

}  // namespace amhs::features

#endif  // AMHS_FEATURES_TFIDF_H_
