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

// A trained model together with the featurization it expects, and its
// on-disk container.
//
// Model file (JSON, UTF-8):
//   {"schema_version": 1,
//    "model_type": "rule" | "linear" | "sbilstm",
//    "class_order": ["racial", "religious", "gender", "nonhate"],
//    "vocab_hash": "<hex digest of the training vocabulary>",
//    "parameters": {...model specific...},
//    "vocab": {...}}          (absent for rule models)

#ifndef AMHS_MODELS_CLASSIFIER_H_
#define AMHS_MODELS_CLASSIFIER_H_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "features/vocabulary.h"
#include "models/linear_model.h"
#include "models/rule_model.h"
#include "models/sbilstm.h"

namespace amhs::models {

inline constexpr int kModelSchemaVersion = 1;

enum class ModelType { kRule, kLinear, kSBiLstm };

const char *ModelTypeName(ModelType type);
ModelType ParseModelType(const std::string &name);

class Classifier {
 public:
  // `vocab_hash` ties a rule model to the split it was evaluated on; it may
  // be empty.
  static Classifier FromRule(RuleModel model, std::string vocab_hash);
  static Classifier FromLinear(LinearModel model, features::Vocabulary vocab);
  static Classifier FromSBiLstm(SBiLstmModel model,
                                features::Vocabulary vocab);

  ModelType type() const { return type_; }
  const std::string &vocab_hash() const { return vocab_hash_; }
  const features::Vocabulary *vocabulary() const {
    return vocab_ ? &*vocab_ : nullptr;
  }

  Prediction Predict(const textnorm::CleanDocument &doc) const;
  std::vector<Prediction> PredictAll(
      std::span<const textnorm::CleanDocument> docs) const;

  nlohmann::ordered_json ToJson() const;
  // Refuses files with another schema version, class order or a vocabulary
  // whose digest disagrees with vocab_hash; also when `expected_vocab_hash`
  // is given and differs.
  static Classifier FromJson(const nlohmann::ordered_json &j,
                             const std::string &expected_vocab_hash = "");

  void Save(const std::string &path) const;
  static Classifier Load(const std::string &path,
                         const std::string &expected_vocab_hash = "");

  const RuleModel *rule() const { return std::get_if<RuleModel>(&model_); }
  const LinearModel *linear() const {
    return std::get_if<LinearModel>(&model_);
  }
  const SBiLstmModel *sbilstm() const {
    return std::get_if<SBiLstmModel>(&model_);
  }

 private:
  ModelType type_ = ModelType::kRule;
  std::string vocab_hash_;
  std::optional<features::Vocabulary> vocab_;
  std::variant<RuleModel, LinearModel, SBiLstmModel> model_;
};

}  // namespace amhs::models

#endif  // AMHS_MODELS_CLASSIFIER_H_
