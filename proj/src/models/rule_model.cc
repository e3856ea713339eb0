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

#include "models/rule_model.h"

#include <charconv>
#include <cmath>

#include "common/error.h"
#include "common/fileutil.h"

namespace amhs::models {

RuleModel::RuleModel()
    : precedence_{Label::kRacial, Label::kReligious, Label::kGender} {}

void RuleModel::Add(const std::string &surface, Label label, double weight,
                    const textnorm::Normalizer &norm) {
  if (label == Label::kNonhate) {
    Fail(ErrorCode::kInvalidArgument, "rule terms cannot target nonhate");
  }
  if (!std::isfinite(weight) || weight <= 0.0) {
    Fail(ErrorCode::kInvalidArgument,
         "rule weight must be finite and positive for '" + surface + "'");
  }
  auto tokens = textnorm::Tokenize(norm.Normalize(surface));
  if (tokens.size() != 1) {
    Fail(ErrorCode::kInvalidArgument,
         "rule term '" + surface + "' is not a single token");
  }
  weights_[tokens[0]][LabelIndex(label)] = weight;
}

RuleModel RuleModel::FromFile(const std::string &path,
                              const textnorm::Normalizer &norm) {
  RuleModel model;
  int line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      Fail(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                  ": expected surface<TAB>label<TAB>weight");
    }
    auto label = ParseLabel(line.substr(t1 + 1, t2 - t1 - 1));
    if (!label) {
      Fail(ErrorCode::kParse,
           path + ":" + std::to_string(line_no) + ": unknown label");
    }
    std::string w = line.substr(t2 + 1);
    double weight = 0.0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      Fail(ErrorCode::kParse,
           path + ":" + std::to_string(line_no) + ": bad weight '" + w + "'");
    }
    model.Add(line.substr(0, t1), *label, weight, norm);
  }
  return model;
}

void RuleModel::set_precedence(const std::array<Label, 3> &order) {
  std::array<bool, kNumLabels> seen{};
  for (Label l : order) {
    if (l == Label::kNonhate || seen[LabelIndex(l)]) {
      Fail(ErrorCode::kInvalidArgument,
           "precedence must list racial, religious and gender once each");
    }
    seen[LabelIndex(l)] = true;
  }
  precedence_ = order;
}

Prediction RuleModel::Predict(const std::vector<std::string> &tokens) const {
  Distribution score{};
  for (const auto &tok : tokens) {
    auto it = weights_.find(tok);
    if (it == weights_.end()) continue;
    for (int c = 0; c < kNumLabels; ++c) score[c] += it->second[c];
  }
  double total = score[0] + score[1] + score[2];
  Prediction p;
  if (total <= 0.0) {
    p.label = Label::kNonhate;
    p.distribution = {0.0, 0.0, 0.0, 1.0};
    return p;
  }
  p.label = precedence_[0];
  for (Label l : precedence_) {
    if (score[LabelIndex(l)] > score[LabelIndex(p.label)]) p.label = l;
  }
  for (int c = 0; c < kNumLabels; ++c) p.distribution[c] = score[c] / total;
  return p;
}

std::vector<RuleTerm> RuleModel::terms() const {
  std::vector<RuleTerm> out;
  for (const auto &[surface, w] : weights_) {
    for (int c = 0; c < kNumLabels; ++c) {
      if (w[c] > 0.0) out.push_back({surface, LabelFromIndex(c), w[c]});
    }
  }
  return out;
}

nlohmann::ordered_json RuleModel::ToJson() const {
  nlohmann::ordered_json j;
  auto &prec = j["precedence"] = nlohmann::ordered_json::array();
  for (Label l : precedence_) prec.push_back(std::string(LabelName(l)));
  auto &terms_json = j["terms"] = nlohmann::ordered_json::array();
  for (const auto &t : terms()) {
    terms_json.push_back({t.surface, std::string(LabelName(t.label)), t.weight});
  }
  return j;
}

RuleModel RuleModel::FromJson(const nlohmann::ordered_json &j) {
  RuleModel model;
  std::array<Label, 3> prec;
  const auto &jp = j.at("precedence");
  if (jp.size() != 3) Fail(ErrorCode::kParse, "precedence needs 3 labels");
  for (size_t i = 0; i < 3; ++i) {
    auto l = ParseLabel(jp[i].get<std::string>());
    if (!l) Fail(ErrorCode::kParse, "bad precedence label");
    prec[i] = *l;
  }
  model.set_precedence(prec);
  for (const auto &t : j.at("terms")) {
    auto l = ParseLabel(t.at(1).get<std::string>());
    if (!l) Fail(ErrorCode::kParse, "bad rule label");
    // Surfaces are stored normalized already.
    auto w = t.at(2).get<double>();
    if (l == Label::kNonhate || !std::isfinite(w) || w <= 0.0) {
      Fail(ErrorCode::kParse, "bad rule term");
    }
    model.weights_[t.at(0).get<std::string>()][LabelIndex(*l)] = w;
  }
  return model;
}

}  // namespace amhs::models
