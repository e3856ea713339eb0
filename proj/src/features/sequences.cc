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

#include "features/sequences.h"

#include "common/error.h"

namespace amhs::features {

std::vector<int32_t> ToSequence(const std::vector<std::string> &tokens,
                                const Vocabulary &vocab, size_t max_len,
                                int *length) {
  if (max_len < 1) Fail(ErrorCode::kInvalidArgument, "max_len must be >= 1");
  std::vector<int32_t> row(max_len, Vocabulary::kPad);
  size_t n = std::min(tokens.size(), max_len);
  for (size_t i = 0; i < n; ++i) row[i] = vocab.Index(tokens[i]);
  *length = static_cast<int>(n);
  return row;
}

SequenceBatch ToSequences(std::span<const textnorm::CleanDocument> docs,
                          const Vocabulary &vocab, size_t max_len) {
  if (max_len < 1) Fail(ErrorCode::kInvalidArgument, "max_len must be >= 1");
  SequenceBatch batch;
  batch.max_len = max_len;
  batch.ids.reserve(docs.size() * max_len);
  for (const auto &doc : docs) {
    int length = 0;
    auto row = ToSequence(doc.tokens, vocab, max_len, &length);
    batch.ids.insert(batch.ids.end(), row.begin(), row.end());
    batch.lengths.push_back(length);
  }
  return batch;
}

}  // namespace amhs::features
