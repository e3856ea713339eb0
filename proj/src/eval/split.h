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

#ifndef AMHS_EVAL_SPLIT_H_
#define AMHS_EVAL_SPLIT_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "common/label.h"

namespace amhs::eval {

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

struct SplitIndices {
  std::vector<size_t> train, val, test;

  // Digest of the three index lists.
  std::string Fingerprint() const;
};

// Raises kConfig unless all ratios lie in [0, 1] and sum to 1.
void ValidateRatios(const SplitRatios &r);

// Stratified by label. Per class the val and test counts are
// floor(n_c * ratio) and the remainder goes to train. Each class is
// shuffled with its own stream derived from `seed`; indices come back in
// ascending order. Ratios must be >= 0 and sum to 1. A split with a positive
// ratio that would get no examples of some present class is an error that
// names the class.
SplitIndices StratifiedSplit(const std::vector<Label> &labels,
                             const SplitRatios &ratios, uint64_t seed);

}  // namespace amhs::eval

#endif  // AMHS_EVAL_SPLIT_H_
