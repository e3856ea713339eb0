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

#ifndef AMHS_MODELS_PREDICTION_H_
#define AMHS_MODELS_PREDICTION_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "common/label.h"

namespace amhs::models {

using Distribution = std::array<double, kNumLabels>;

struct Prediction {
  Label label = Label::kNonhate;
  Distribution distribution{};
};

// First maximum wins, so ties follow class order.
inline int Argmax(std::span<const double> v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline Distribution Softmax(const Distribution &logits) {
  double m = *std::max_element(logits.begin(), logits.end());
  Distribution p;
  double z = 0.0;
  for (int i = 0; i < kNumLabels; ++i) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double &v : p) v /= z;
  return p;
}

inline Prediction FromDistribution(const Distribution &p) {
  return Prediction{LabelFromIndex(Argmax(p)), p};
}

}  // namespace amhs::models

#endif  // AMHS_MODELS_PREDICTION_H_
