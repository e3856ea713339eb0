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

#include "eval/report.h"

#include <cstdio>

#include "common/error.h"

namespace amhs::eval {
namespace {

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Pad(const std::string &s, size_t width) {
  // Labels and ids are ASCII, so bytes equal columns.
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

nlohmann::ordered_json MetricsJson(const Metrics &m) {
  nlohmann::ordered_json j;
  auto &per = j["per_class"] = nlohmann::ordered_json::object();
  for (int c = 0; c < kNumLabels; ++c) {
    per[std::string(kLabelNames[c])] = {{"precision", m.precision[c]},
                                        {"recall", m.recall[c]},
                                        {"f1", m.f1[c]},
                                        {"support", m.support[c]}};
  }
  j["macro_f1"] = m.macro_f1;
  j["micro_f1"] = m.micro_f1;
  j["weighted_f1"] = m.weighted_f1;
  j["accuracy"] = m.accuracy;
  j["total"] = m.total;
  j["confusion"] = m.confusion;
  return j;
}

nlohmann::ordered_json PublishedJson() {
  nlohmann::ordered_json j;
  j["status"] = kPublishedStatus;
  j["caveat"] = kPublishedCaveat;
  auto &rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto &p : kPublishedScores) {
    rows.push_back({{"model_type", p.model_type},
                    {"description", p.description},
                    {"f1_percent", p.f1_percent}});
  }
  return j;
}

std::string ConfusionText(const Metrics &m) {
  std::string out = Pad("gold \\ pred", 12);
  for (auto name : kLabelNames) out += Pad(std::string(name), 11);
  out += "\n";
  for (int g = 0; g < kNumLabels; ++g) {
    out += Pad(std::string(kLabelNames[g]), 12);
    for (int p = 0; p < kNumLabels; ++p) {
      out += Pad(std::to_string(m.confusion[g][p]), 11);
    }
    out += "\n";
  }
  return out;
}

std::string PublishedText() {
  std::string out = std::string("published reference (F1 x 100, ") +
                    kPublishedStatus + ")\n";
  for (const auto &p : kPublishedScores) {
    out += "  " + Pad(p.model_type, 10) + Pad(Fixed(p.f1_percent, 1), 7) +
           p.description + "\n";
  }
  out += std::string("  note: ") + kPublishedCaveat + "\n";
  return out;
}

// Padding leaves trailing blanks on row ends; drop them.
std::string TrimLines(const std::string &text) {
  std::string out;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    size_t last = end;
    while (last > start && text[last - 1] == ' ') --last;
    out.append(text, start, last - start);
    if (end < text.size()) out += '\n';
    start = end + 1;
  }
  return out;
}

}  // namespace

EvalReport Evaluate(const models::Classifier &model, const std::string &model_id,
                    std::span<const textnorm::CleanDocument> docs,
                    const std::vector<Label> &gold,
                    const std::string &split_fingerprint, uint64_t split_seed,
                    Averaging averaging) {
  std::vector<Label> pred;
  pred.reserve(docs.size());
  for (const auto &p : model.PredictAll(docs)) pred.push_back(p.label);
  EvalReport r;
  r.model_id = model_id;
  r.model_type = models::ModelTypeName(model.type());
  r.vocab_hash = model.vocab_hash();
  r.split_fingerprint = split_fingerprint;
  r.split_seed = split_seed;
  r.averaging = averaging;
  r.metrics = ComputeMetrics(gold, pred);
  return r;
}

Comparison Compare(const std::vector<NamedModel> &models,
                   std::span<const textnorm::CleanDocument> docs,
                   const std::vector<Label> &gold,
                   const std::string &split_fingerprint, uint64_t split_seed,
                   Averaging averaging) {
  std::string hash;
  for (const auto &m : models) {
    const std::string &h = m.model->vocab_hash();
    if (h.empty()) continue;
    if (hash.empty()) {
      hash = h;
    } else if (h != hash) {
      Fail(ErrorCode::kConflict, "model '" + m.id +
                                     "' was trained on a different vocabulary (" +
                                     h + " vs " + hash + ")");
    }
  }
  Comparison c;
  c.averaging = averaging;
  c.test_size = gold.size();
  for (const auto &m : models) {
    c.rows.push_back(Evaluate(*m.model, m.id, docs, gold, split_fingerprint,
                              split_seed, averaging));
  }
  return c;
}

nlohmann::ordered_json ToJson(const EvalReport &r) {
  nlohmann::ordered_json j;
  j["report_version"] = kReportVersion;
  j["kind"] = "evaluation";
  j["model_id"] = r.model_id;
  j["model_type"] = r.model_type;
  j["vocab_hash"] = r.vocab_hash;
  j["split_fingerprint"] = r.split_fingerprint;
  j["split_seed"] = r.split_seed;
  j["averaging"] = AveragingName(r.averaging);
  j["f1"] = r.metrics.F1(r.averaging);
  j["metrics"] = MetricsJson(r.metrics);
  j["published_reference"] = PublishedJson();
  return j;
}

nlohmann::ordered_json ToJson(const Comparison &c) {
  nlohmann::ordered_json j;
  j["report_version"] = kReportVersion;
  j["kind"] = "comparison";
  j["averaging"] = AveragingName(c.averaging);
  j["test_size"] = c.test_size;
  auto &rows = j["models"] = nlohmann::ordered_json::array();
  for (const auto &r : c.rows) {
    auto row = ToJson(r);
    row.erase("report_version");
    row.erase("kind");
    row.erase("published_reference");
    rows.push_back(std::move(row));
  }
  j["published_reference"] = PublishedJson();
  return j;
}

std::string ToText(const EvalReport &r) {
  std::string out = "report_version " + std::to_string(kReportVersion) + "\n";
  out += "model " + r.model_id + " (" + r.model_type + ")\n";
  out += "split " + r.split_fingerprint + " seed " + std::to_string(r.split_seed) +
         "\n";
  out += std::string("averaging ") + AveragingName(r.averaging) + "\n\n";
  out += Pad("class", 12) + Pad("precision", 11) + Pad("recall", 11) +
         Pad("f1", 11) + "support\n";
  for (int c = 0; c < kNumLabels; ++c) {
    out += Pad(std::string(kLabelNames[c]), 12) +
           Pad(Fixed(r.metrics.precision[c]), 11) +
           Pad(Fixed(r.metrics.recall[c]), 11) + Pad(Fixed(r.metrics.f1[c]), 11) +
           std::to_string(r.metrics.support[c]) + "\n";
  }
  out += "\nmacro_f1 " + Fixed(r.metrics.macro_f1) + "  micro_f1 " +
         Fixed(r.metrics.micro_f1) + "  weighted_f1 " +
         Fixed(r.metrics.weighted_f1) + "  accuracy " +
         Fixed(r.metrics.accuracy) + "\n\n";
  out += ConfusionText(r.metrics) + "\n" + PublishedText();
  return TrimLines(out);
}

std::string ToText(const Comparison &c) {
  std::string out = "report_version " + std::to_string(kReportVersion) + "\n";
  out += "comparison on " + std::to_string(c.test_size) + " test documents, " +
         AveragingName(c.averaging) + " F1\n";
  if (!c.rows.empty()) {
    out += "split " + c.rows[0].split_fingerprint + " seed " +
           std::to_string(c.rows[0].split_seed) + "\n";
  }
  out += "\n" + Pad("model", 14) + Pad("type", 9) + Pad("f1", 9) +
         Pad("accuracy", 10);
  for (auto name : kLabelNames) out += Pad(std::string(name), 11);
  out += "\n";
  for (const auto &r : c.rows) {
    out += Pad(r.model_id, 14) + Pad(r.model_type, 9) +
           Pad(Fixed(r.metrics.F1(c.averaging)), 9) +
           Pad(Fixed(r.metrics.accuracy), 10);
    for (int k = 0; k < kNumLabels; ++k) out += Pad(Fixed(r.metrics.f1[k]), 11);
    out += "\n";
  }
  out += "\n" + PublishedText();
  return TrimLines(out);
}

}  // namespace amhs::eval
