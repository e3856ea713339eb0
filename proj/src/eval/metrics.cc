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

#include "eval/metrics.h"

#include "common/error.h"

namespace amhs::eval {

const char *AveragingName(Averaging a) {
  switch (a) {
    case Averaging::kMacro:
      return "macro";
    case Averaging::kMicro:
      return "micro";
    case Averaging::kWeighted:
      return "weighted";
  }
  return "macro";
}

Averaging ParseAveraging(const std::string &name) {
  if (name == "macro") return Averaging::kMacro;
  if (name == "micro") return Averaging::kMicro;
  if (name == "weighted") return Averaging::kWeighted;
  Fail(ErrorCode::kConfig, "unknown averaging '" + name + "'");
}

double Metrics::F1(Averaging a) const {
  switch (a) {
    case Averaging::kMacro:
      return macro_f1;
    case Averaging::kMicro:
      return micro_f1;
    case Averaging::kWeighted:
      return weighted_f1;
  }
  return macro_f1;
}

Metrics ComputeMetrics(const std::vector<Label> &gold,
                       const std::vector<Label> &pred) {
  if (gold.size() != pred.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "gold has " + std::to_string(gold.size()) + " labels, pred has " +
             std::to_string(pred.size()));
  }
  Metrics m;
  m.total = gold.size();
  size_t correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    m.confusion[LabelIndex(gold[i])][LabelIndex(pred[i])]++;
    correct += gold[i] == pred[i];
  }
  for (int c = 0; c < kNumLabels; ++c) {
    size_t tp = m.confusion[c][c];
    size_t pred_c = 0, gold_c = 0;
    for (int o = 0; o < kNumLabels; ++o) {
      pred_c += m.confusion[o][c];
      gold_c += m.confusion[c][o];
    }
    m.support[c] = gold_c;
    m.precision[c] = pred_c ? static_cast<double>(tp) / pred_c : 0.0;
    m.recall[c] = gold_c ? static_cast<double>(tp) / gold_c : 0.0;
    double s = m.precision[c] + m.recall[c];
    m.f1[c] = s > 0.0 ? 2.0 * m.precision[c] * m.recall[c] / s : 0.0;
  }
  double sum = 0.0, weighted = 0.0;
  for (int c = 0; c < kNumLabels; ++c) {
    sum += m.f1[c];
    weighted += m.f1[c] * static_cast<double>(m.support[c]);
  }
  m.macro_f1 = sum / kNumLabels;
  m.accuracy = m.total ? static_cast<double>(correct) / m.total : 0.0;
  // Single-label multi-class: micro precision = micro recall = accuracy.
  m.micro_f1 = m.accuracy;
  m.weighted_f1 = m.total ? weighted / static_cast<double>(m.total) : 0.0;
  return m;
}

}  // namespace amhs::eval
