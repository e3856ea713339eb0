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

#include "models/classifier.h"

#include "common/error.h"
#include "common/fileutil.h"
#include "features/sequences.h"
#include "features/tfidf.h"

namespace amhs::models {

const char *ModelTypeName(ModelType type) {
  switch (type) {
    case ModelType::kRule:
      return "rule";
    case ModelType::kLinear:
      return "linear";
    case ModelType::kSBiLstm:
      return "sbilstm";
  }
  return "rule";
}

ModelType ParseModelType(const std::string &name) {
  if (name == "rule") return ModelType::kRule;
  if (name == "linear") return ModelType::kLinear;
  if (name == "sbilstm") return ModelType::kSBiLstm;
  Fail(ErrorCode::kInvalidArgument, "unknown model type '" + name +
                                        "' (expected rule, linear or sbilstm)");
}

Classifier Classifier::FromRule(RuleModel model, std::string vocab_hash) {
  Classifier c;
  c.type_ = ModelType::kRule;
  c.vocab_hash_ = std::move(vocab_hash);
  c.model_ = std::move(model);
  return c;
}

Classifier Classifier::FromLinear(LinearModel model,
                                  features::Vocabulary vocab) {
  if (model.num_features() != vocab.num_terms()) {
    Fail(ErrorCode::kInvalidArgument,
         "linear model width does not match the vocabulary");
  }
  Classifier c;
  c.type_ = ModelType::kLinear;
  c.vocab_hash_ = vocab.hash();
  c.vocab_ = std::move(vocab);
  c.model_ = std::move(model);
  return c;
}

Classifier Classifier::FromSBiLstm(SBiLstmModel model,
                                   features::Vocabulary vocab) {
  if (model.vocab_size() != vocab.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "sbilstm embedding rows do not match the vocabulary");
  }
  Classifier c;
  c.type_ = ModelType::kSBiLstm;
  c.vocab_hash_ = vocab.hash();
  c.vocab_ = std::move(vocab);
  c.model_ = std::move(model);
  return c;
}

Prediction Classifier::Predict(const textnorm::CleanDocument &doc) const {
  switch (type_) {
    case ModelType::kRule:
      return std::get<RuleModel>(model_).Predict(doc.tokens);
    case ModelType::kLinear:
      return std::get<LinearModel>(model_).Predict(
          features::TfidfRow(doc.tokens, *vocab_));
    case ModelType::kSBiLstm: {
      const auto &m = std::get<SBiLstmModel>(model_);
      int length = 0;
      auto ids = features::ToSequence(doc.tokens, *vocab_,
                                      m.config().max_len, &length);
      return m.Predict(ids, length);
    }
  }
  Fail(ErrorCode::kInternal, "unreachable model type");
}

std::vector<Prediction> Classifier::PredictAll(
    std::span<const textnorm::CleanDocument> docs) const {
  std::vector<Prediction> out;
  out.reserve(docs.size());
  for (const auto &d : docs) out.push_back(Predict(d));
  return out;
}

nlohmann::ordered_json Classifier::ToJson() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kModelSchemaVersion;
  j["model_type"] = ModelTypeName(type_);
  auto &order = j["class_order"] = nlohmann::ordered_json::array();
  for (auto name : kLabelNames) order.push_back(std::string(name));
  j["vocab_hash"] = vocab_hash_;
  switch (type_) {
    case ModelType::kRule:
      j["parameters"] = std::get<RuleModel>(model_).ToJson();
      break;
    case ModelType::kLinear:
      j["parameters"] = std::get<LinearModel>(model_).ToJson();
      break;
    case ModelType::kSBiLstm:
      j["parameters"] = std::get<SBiLstmModel>(model_).ToJson();
      break;
  }
  if (vocab_) j["vocab"] = vocab_->ToJson();
  return j;
}

Classifier Classifier::FromJson(const nlohmann::ordered_json &j,
                                const std::string &expected_vocab_hash) {
  try {
    int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      Fail(ErrorCode::kSchema, "model schema_version " +
                                   std::to_string(version) +
                                   " is not supported (expected " +
                                   std::to_string(kModelSchemaVersion) + ")");
    }
    const auto &order = j.at("class_order");
    bool same = order.size() == kLabelNames.size();
    for (size_t i = 0; same && i < order.size(); ++i) {
      same = order[i].get<std::string>() == kLabelNames[i];
    }
    if (!same) Fail(ErrorCode::kSchema, "model class_order differs");
    ModelType type = ParseModelType(j.at("model_type").get<std::string>());
    std::string hash = j.at("vocab_hash").get<std::string>();
    if (!expected_vocab_hash.empty() && hash != expected_vocab_hash) {
      Fail(ErrorCode::kConflict, "model vocabulary hash " + hash +
                                     " does not match expected " +
                                     expected_vocab_hash);
    }
    const auto &params = j.at("parameters");
    if (type == ModelType::kRule) {
      return FromRule(RuleModel::FromJson(params), hash);
    }
    auto vocab = features::Vocabulary::FromJson(j.at("vocab"));
    if (vocab.hash() != hash) {
      Fail(ErrorCode::kConflict,
           "embedded vocabulary does not match vocab_hash " + hash);
    }
    if (type == ModelType::kLinear) {
      return FromLinear(LinearModel::FromJson(params), std::move(vocab));
    }
    return FromSBiLstm(SBiLstmModel::FromJson(params), std::move(vocab));
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kParse, std::string("malformed model file: ") + e.what());
  }
}

void Classifier::Save(const std::string &path) const {
  WriteFileAtomic(path, ToJson().dump() + "\n");
}

Classifier Classifier::Load(const std::string &path,
                            const std::string &expected_vocab_hash) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kParse, path + ": not a model file: " + e.what());
  }
  return FromJson(j, expected_vocab_hash);
}

}  // namespace amhs::models
