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

#ifndef AMHS_FEATURES_SEQUENCES_H_
#define AMHS_FEATURES_SEQUENCES_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "features/vocabulary.h"

namespace amhs::features {

// Right-padded index matrix, one row of max_len per document.
struct SequenceBatch {
  size_t max_len = 0;
  std::vector<int32_t> ids;
  std::vector<int> lengths;

  size_t rows() const { return lengths.size(); }
  std::span<const int32_t> Row(size_t r) const {
    return std::span<const int32_t>(ids).subspan(r * max_len, max_len);
  }
};

// Unknown tokens map to Vocabulary::kUnknown; sequences longer than max_len
// are truncated. Throws Error(kInvalidArgument) if max_len < 1.
SequenceBatch ToSequences(std::span<const textnorm::CleanDocument> docs,
                          const Vocabulary &vocab, size_t max_len);

std::vector<int32_t> ToSequence(const std::vector<std::string> &tokens,
                                const Vocabulary &vocab, size_t max_len,
                                int *length);

}  // namespace amhs::features

#endif  // AMHS_FEATURES_SEQUENCES_H_
