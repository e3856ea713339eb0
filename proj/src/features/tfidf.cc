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

#include "features/tfidf.h"

#include <cmath>
#include <map>
#include <sstream>

#include "common/error.h"
#include "common/fileutil.h"

namespace amhs::features {

std::vector<double> TfidfMatrix::DenseRow(size_t r) const {
  std::vector<double> dense(cols, 0.0);
  for (const auto &[c, v] : rows.at(r)) dense[c] = v;
  return dense;
}

std::string TfidfMatrix::ToTriplets() const {
  size_t nnz = 0;
  for (const auto &row : rows) nnz += row.size();
  std::string out = std::to_string(rows.size()) + " " + std::to_string(cols) +
                    " " + std::to_string(nnz) + "\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    for (const auto &[c, v] : rows[r]) {
      out += std::to_string(r) + " " + std::to_string(c) + " " +
             FormatDouble(v) + "\n";
    }
  }
  return out;
}

TfidfMatrix TfidfMatrix::FromTriplets(const std::string &text) {
  std::istringstream in(text);
  size_t n_rows = 0, nnz = 0;
  TfidfMatrix m;
  if (!(in >> n_rows >> m.cols >> nnz)) {
    Fail(ErrorCode::kParse, "bad triplet header");
  }
  m.rows.resize(n_rows);
  for (size_t i = 0; i < nnz; ++i) {
    size_t r;
    int c;
    std::string value;
    if (!(in >> r >> c >> value) || r >= n_rows || c < 0 ||
        static_cast<size_t>(c) >= m.cols) {
      Fail(ErrorCode::kParse, "bad triplet at entry " + std::to_string(i));
    }
    m.rows[r].emplace_back(c, std::stod(value));
  }
  return m;
}

double Idf(const Vocabulary &vocab, int index) {
  double n = static_cast<double>(vocab.num_docs());
  double df = static_cast<double>(vocab.Df(index));
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

SparseRow TfidfRow(const std::vector<std::string> &tokens,
                   const Vocabulary &vocab) {
  std::map<int, int> counts;
  for (const auto &token : tokens) {
    int index = vocab.Index(token);
    if (index >= Vocabulary::kNumSpecials) ++counts[index];
  }
  SparseRow row;
  double norm2 = 0.0;
  for (const auto &[index, count] : counts) {
    double w = count * Idf(vocab, index);
    row.emplace_back(index - Vocabulary::kNumSpecials, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    double inv = 1.0 / std::sqrt(norm2);
    for (auto &entry : row) entry.second *= inv;
  }
  return row;
}

TfidfMatrix Tfidf(std::span<const textnorm::CleanDocument> docs,
                  const Vocabulary &vocab) {
  TfidfMatrix m;
  m.cols = vocab.num_terms();
  m.rows.reserve(docs.size());
  for (const auto &doc : docs) m.rows.push_back(TfidfRow(doc.tokens, vocab));
  return m;
}

}  // namespace amhs::features
