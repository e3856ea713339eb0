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

// Pipeline stages. Each stage writes into <out_dir>/<stage>/ through a
// staging directory that is renamed into place only on success, together
// with the resolved config and a manifest of input and output hashes.
//
//   ingest        sources -> ingest/posts.jsonl
//   filter        ingest/posts.jsonl -> filter/pool.jsonl
//   export-gold   annotation store or a labels file -> gold/gold.jsonl
//   train         gold -> train/<model>/model.json
//   evaluate      gold + model -> evaluate/<model>/report.{json,txt}
//   compare       gold + models -> compare/comparison.{json,txt}

#ifndef AMHS_PIPELINE_PIPELINE_H_
#define AMHS_PIPELINE_PIPELINE_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "common/label.h"
#include "models/classifier.h"
#include "pipeline/config.h"
#include "textnorm/normalizer.h"

namespace amhs::pipeline {

struct GoldSet {
  std::vector<textnorm::CleanDocument> docs;
  std::vector<Label> labels;
};

// Reads {"id","text","tokens","label"} lines.
GoldSet ReadGold(const std::string &path);

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig &config() const { return config_; }
  const textnorm::Normalizer &normalizer() const { return normalizer_; }

  // Each stage returns a small JSON summary.
  nlohmann::ordered_json Ingest();
  nlohmann::ordered_json Filter();
  // Exactly one of `dataset_id` (annotation store) or `labels_path`
  // ("id<TAB>label" lines joined with filter/pool.jsonl) must be set.
  nlohmann::ordered_json ExportGold(const std::string &dataset_id,
                                    const std::string &labels_path);
  nlohmann::ordered_json Train(models::ModelType type);
  // `model_path` empty: train/<type>/model.json.
  nlohmann::ordered_json Evaluate(models::ModelType type,
                                  const std::string &model_path = "");
  nlohmann::ordered_json Compare();
  // Blocks serving the annotation API. `import_path` is imported first when
  // set; an already imported file is not an error.
  void Serve(const std::string &import_path, int port_override = -1);

  // One JSON object per text: {"label", "distribution"}.
  std::vector<nlohmann::ordered_json> Predict(
      const std::string &model_path, const std::vector<std::string> &texts);

  std::string StagePath(const std::string &stage) const;
  std::string ModelPath(models::ModelType type) const;

 private:
  PipelineConfig config_;
  textnorm::Normalizer normalizer_;
};

}  // namespace amhs::pipeline

#endif  // AMHS_PIPELINE_PIPELINE_H_
