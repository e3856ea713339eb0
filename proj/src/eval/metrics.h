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

#ifndef AMHS_EVAL_METRICS_H_
#define AMHS_EVAL_METRICS_H_

#include <array>
#include <string>
#include <vector>

#include "common/label.h"

namespace amhs::eval {

enum class Averaging { kMacro, kMicro, kWeighted };

const char *AveragingName(Averaging a);
Averaging ParseAveraging(const std::string &name);

using PerClass = std::array<double, kNumLabels>;
using Confusion = std::array<std::array<size_t, kNumLabels>, kNumLabels>;

struct Metrics {
  PerClass precision{};
  PerClass recall{};
  PerClass f1{};
  std::array<size_t, kNumLabels> support{};
  // Rows are gold, columns predicted.
  Confusion confusion{};
  size_t total = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  double weighted_f1 = 0.0;

  double F1(Averaging a) const;
};

// Throws Error(kInvalidArgument) on length mismatch.
Metrics ComputeMetrics(const std::vector<Label> &gold,
                       const std::vector<Label> &pred);

}  // namespace amhs::eval

#endif  // AMHS_EVAL_METRICS_H_
