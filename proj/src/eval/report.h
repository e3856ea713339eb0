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

// Evaluation and comparison reports. Each report has a JSON form and an
// aligned text table; both carry `report_version` and no timestamps, so
// identical runs give identical bytes.

#ifndef AMHS_EVAL_REPORT_H_
#define AMHS_EVAL_REPORT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eval/metrics.h"
#include "models/classifier.h"

namespace amhs::eval {

inline constexpr int kReportVersion = 1;

struct EvalReport {
  std::string model_id;
  std::string model_type;
  std::string vocab_hash;
  std::string split_fingerprint;
  uint64_t split_seed = 0;
  Averaging averaging = Averaging::kMacro;
  Metrics metrics;
};

struct PublishedScore {
  const char *model_type;
  const char *description;
  double f1_percent;
};

// Reference F1 values reported for the original (unreleased) corpus.
inline constexpr PublishedScore kPublishedScores[] = {
    {"sbilstm", "stacked bidirectional LSTM", 94.8},
    {"linear", "classic machine learning", 80.3},
    {"rule", "rule-based baseline", 40.1},
};
inline constexpr const char *kPublishedStatus = "published, not reproduced";
inline constexpr const char *kPublishedCaveat =
    "original corpus unavailable; averaging (macro, micro or weighted) not "
    "stated for these values";

EvalReport Evaluate(const models::Classifier &model, const std::string &model_id,
                    std::span<const textnorm::CleanDocument> docs,
                    const std::vector<Label> &gold,
                    const std::string &split_fingerprint, uint64_t split_seed,
                    Averaging averaging = Averaging::kMacro);

struct Comparison {
  std::vector<EvalReport> rows;
  Averaging averaging = Averaging::kMacro;
  size_t test_size = 0;
};

struct NamedModel {
  std::string id;
  const models::Classifier *model;
};

// Throws Error(kConflict) when the models disagree on a non-empty
// vocabulary hash.
Comparison Compare(const std::vector<NamedModel> &models,
                   std::span<const textnorm::CleanDocument> docs,
                   const std::vector<Label> &gold,
                   const std::string &split_fingerprint, uint64_t split_seed,
                   Averaging averaging = Averaging::kMacro);

nlohmann::ordered_json ToJson(const EvalReport &report);
nlohmann::ordered_json ToJson(const Comparison &comparison);
std::string ToText(const EvalReport &report);
std::string ToText(const Comparison &comparison);

}  // namespace amhs::eval

#endif  // AMHS_EVAL_REPORT_H_
