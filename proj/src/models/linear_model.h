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

// Multinomial logistic regression over sparse TF-IDF rows, trained by
// full-batch gradient descent on mean cross-entropy + (l2 / 2) |W|^2.

#ifndef AMHS_MODELS_LINEAR_MODEL_H_
#define AMHS_MODELS_LINEAR_MODEL_H_

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "features/tfidf.h"
#include "models/prediction.h"

namespace amhs::models {

struct LinearConfig {
  double learning_rate = 0.5;
  double l2 = 1e-4;
  int epochs = 300;
  uint64_t seed = 1;
  // Initial weights ~ N(0, init_scale); zero keeps training seed-free.
  double init_scale = 0.0;
};

class LinearModel {
 public:
  LinearModel() = default;
  explicit LinearModel(size_t num_features);

  size_t num_features() const { return num_features_; }

  // Row-major 4 x num_features.
  std::vector<double> &weights() { return w_; }
  const std::vector<double> &weights() const { return w_; }
  Distribution &bias() { return b_; }
  const Distribution &bias() const { return b_; }

  Distribution Logits(const features::SparseRow &x) const;
  Prediction Predict(const features::SparseRow &x) const;

  // Mean cross-entropy plus the L2 term.
  double Loss(const std::vector<features::SparseRow> &x,
              const std::vector<Label> &y, double l2) const;
  // Gradient of Loss; grad_w has the shape of weights().
  void Gradient(const std::vector<features::SparseRow> &x,
                const std::vector<Label> &y, double l2,
                std::vector<double> *grad_w, Distribution *grad_b) const;

  nlohmann::ordered_json ToJson() const;
  static LinearModel FromJson(const nlohmann::ordered_json &j);

 private:
  size_t num_features_ = 0;
  std::vector<double> w_;
  Distribution b_{};
};

struct LinearTrace {
  std::vector<double> loss;  // before each update, then the final loss
};

// Throws Error(kNumeric) when the loss or parameters go non-finite.
LinearModel TrainLinear(const std::vector<features::SparseRow> &x,
                        const std::vector<Label> &y, size_t num_features,
                        const LinearConfig &config,
                        LinearTrace *trace = nullptr);

}  // namespace amhs::models

#endif  // AMHS_MODELS_LINEAR_MODEL_H_
