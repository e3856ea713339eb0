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

// Weighted keyword scorer. Each lexicon term votes for one hate category;
// documents with no matches are non-hate.

#ifndef AMHS_MODELS_RULE_MODEL_H_
#define AMHS_MODELS_RULE_MODEL_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "models/prediction.h"
#include "textnorm/normalizer.h"

namespace amhs::models {

struct RuleTerm {
  std::string surface;
  Label label;
  double weight;
};

class RuleModel {
 public:
  RuleModel();

  // `surface` is normalized and must be a single token; `label` may not be
  // nonhate; weight must be finite and positive. Re-adding a (surface,
  // label) pair replaces its weight.
  void Add(const std::string &surface, Label label, double weight,
           const textnorm::Normalizer &norm = textnorm::DefaultNormalizer());

  // `surface<TAB>label<TAB>weight` lines; '#' starts a comment.
  static RuleModel FromFile(
      const std::string &path,
      const textnorm::Normalizer &norm = textnorm::DefaultNormalizer());

  // Hate labels from highest to lowest priority on score ties.
  void set_precedence(const std::array<Label, 3> &order);
  const std::array<Label, 3> &precedence() const { return precedence_; }

  Prediction Predict(const std::vector<std::string> &tokens) const;

  std::vector<RuleTerm> terms() const;
  size_t size() const { return weights_.size(); }

  nlohmann::ordered_json ToJson() const;
  static RuleModel FromJson(const nlohmann::ordered_json &j);

 private:
  // surface -> per-label weight.
  std::map<std::string, Distribution> weights_;
  std::array<Label, 3> precedence_;
};

}  // namespace amhs::models

#endif  // AMHS_MODELS_RULE_MODEL_H_
