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

#include "models/linear_model.h"

#include <cmath>

#include "common/error.h"
#include "common/log.h"
#include "common/rng.h"

namespace amhs::models {

LinearModel::LinearModel(size_t num_features)
    : num_features_(num_features), w_(kNumLabels * num_features, 0.0) {}

Distribution LinearModel::Logits(const features::SparseRow &x) const {
  Distribution z = b_;
  for (const auto &[col, v] : x) {
    if (col < 0 || static_cast<size_t>(col) >= num_features_) {
      Fail(ErrorCode::kInvalidArgument,
           "feature column " + std::to_string(col) + " out of range");
    }
    for (int c = 0; c < kNumLabels; ++c) z[c] += w_[c * num_features_ + col] * v;
  }
  return z;
}

Prediction LinearModel::Predict(const features::SparseRow &x) const {
  return FromDistribution(Softmax(Logits(x)));
}

double LinearModel::Loss(const std::vector<features::SparseRow> &x,
                         const std::vector<Label> &y, double l2) const {
  double total = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    Distribution z = Logits(x[i]);
    double m = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - m);
    total += m + std::log(s) - z[LabelIndex(y[i])];
  }
  double reg = 0.0;
  for (double w : w_) reg += w * w;
  return total / static_cast<double>(x.size()) + 0.5 * l2 * reg;
}

void LinearModel::Gradient(const std::vector<features::SparseRow> &x,
                           const std::vector<Label> &y, double l2,
                           std::vector<double> *grad_w,
                           Distribution *grad_b) const {
  grad_w->assign(w_.size(), 0.0);
  grad_b->fill(0.0);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    Distribution p = Softmax(Logits(x[i]));
    p[LabelIndex(y[i])] -= 1.0;
    for (int c = 0; c < kNumLabels; ++c) {
      (*grad_b)[c] += p[c] * inv_n;
      for (const auto &[col, v] : x[i]) {
        (*grad_w)[c * num_features_ + col] += p[c] * v * inv_n;
      }
    }
  }
  for (size_t k = 0; k < w_.size(); ++k) (*grad_w)[k] += l2 * w_[k];
}

nlohmann::ordered_json LinearModel::ToJson() const {
  nlohmann::ordered_json j;
  j["num_features"] = num_features_;
  j["bias"] = b_;
  j["weights"] = w_;
  return j;
}

LinearModel LinearModel::FromJson(const nlohmann::ordered_json &j) {
  LinearModel m(j.at("num_features").get<size_t>());
  m.b_ = j.at("bias").get<Distribution>();
  m.w_ = j.at("weights").get<std::vector<double>>();
  if (m.w_.size() != kNumLabels * m.num_features_) {
    Fail(ErrorCode::kParse, "linear weights have the wrong size");
  }
  return m;
}

LinearModel TrainLinear(const std::vector<features::SparseRow> &x,
                        const std::vector<Label> &y, size_t num_features,
                        const LinearConfig &config, LinearTrace *trace) {
  if (x.empty() || x.size() != y.size()) {
    Fail(ErrorCode::kInvalidArgument, "need equal, non-zero rows and labels");
  }
  if (config.epochs < 0 || !(config.learning_rate > 0.0) || config.l2 < 0.0) {
    Fail(ErrorCode::kConfig, "bad linear training config");
  }
  LinearModel model(num_features);
  if (config.init_scale > 0.0) {
    Rng rng(config.seed);
    for (double &w : model.weights()) w = rng.Normal(0.0, config.init_scale);
  }
  std::vector<double> gw;
  Distribution gb;
  for (int epoch = 0; epoch <= config.epochs; ++epoch) {
    double loss = model.Loss(x, y, config.l2);
    if (!std::isfinite(loss)) {
      Fail(ErrorCode::kNumeric, "linear training diverged at epoch " +
                                    std::to_string(epoch) +
                                    " (loss not finite); lower learning_rate");
    }
    if (trace) trace->loss.push_back(loss);
    if (epoch % 50 == 0) Log().debug("linear epoch {} loss {:.6f}", epoch, loss);
    if (epoch == config.epochs) break;
    model.Gradient(x, y, config.l2, &gw, &gb);
    for (size_t k = 0; k < gw.size(); ++k) {
      model.weights()[k] -= config.learning_rate * gw[k];
    }
    for (int c = 0; c < kNumLabels; ++c) {
      model.bias()[c] -= config.learning_rate * gb[c];
    }
  }
  return model;
}

}  // namespace amhs::models
