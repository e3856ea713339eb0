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

#include "eval/split.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "common/hash.h"
#include "common/rng.h"

namespace amhs::eval {

std::string SplitIndices::Fingerprint() const {
  std::string buf;
  for (const auto *part : {&train, &val, &test}) {
    for (size_t i : *part) buf += std::to_string(i) + ",";
    buf += ";";
  }
  return Sha256Hex(buf).substr(0, 16);
}

void ValidateRatios(const SplitRatios &r) {
  for (double v : {r.train, r.val, r.test}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      Fail(ErrorCode::kConfig, "split ratios must lie in [0, 1]");
    }
  }
  if (std::fabs(r.train + r.val + r.test - 1.0) > 1e-9) {
    Fail(ErrorCode::kConfig, "split ratios must sum to 1");
  }
}

SplitIndices StratifiedSplit(const std::vector<Label> &labels,
                             const SplitRatios &r, uint64_t seed) {
  ValidateRatios(r);
  std::vector<std::vector<size_t>> members(kNumLabels);
  for (size_t i = 0; i < labels.size(); ++i) {
    members[LabelIndex(labels[i])].push_back(i);
  }
  SplitIndices out;
  for (int c = 0; c < kNumLabels; ++c) {
    auto &m = members[c];
    if (m.empty()) continue;
    const double n = static_cast<double>(m.size());
    // The epsilon guards products like 0.29 * 100 = 28.999999999999996.
    size_t n_val = static_cast<size_t>(std::floor(n * r.val + 1e-9));
    size_t n_test = static_cast<size_t>(std::floor(n * r.test + 1e-9));
    size_t n_train = m.size() - n_val - n_test;
    auto too_small = [&](const char *which) {
      Fail(ErrorCode::kInvalidArgument,
           "class " + std::string(kLabelNames[c]) + " has " +
               std::to_string(m.size()) + " examples, too few for a " + which +
               " split");
    };
    if (r.val > 0.0 && n_val == 0) too_small("validation");
    if (r.test > 0.0 && n_test == 0) too_small("test");
    if (r.train > 0.0 && n_train == 0) too_small("training");
    Rng rng(DeriveSeed(seed, c));
    rng.Shuffle(m);
    out.val.insert(out.val.end(), m.begin(), m.begin() + n_val);
    out.test.insert(out.test.end(), m.begin() + n_val,
                    m.begin() + n_val + n_test);
    out.train.insert(out.train.end(), m.begin() + n_val + n_test, m.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace amhs::eval
