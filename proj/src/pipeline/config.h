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

// Pipeline configuration: one JSON file with a fixed key schema. Every key
// has a default; the resolved configuration (defaults, derived seeds and
// absolute paths filled in) is written next to each stage's outputs.

#ifndef AMHS_PIPELINE_CONFIG_H_
#define AMHS_PIPELINE_CONFIG_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "balance/smote.h"
#include "common/label.h"
#include "eval/metrics.h"
#include "eval/split.h"
#include "features/embeddings.h"
#include "ingest/source.h"
#include "models/linear_model.h"
#include "models/sbilstm.h"

namespace amhs::pipeline {

struct SourceConfig {
  std::string adapter;  // "file"
  std::string path;
};

struct ConfigOverrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> out_dir;  // relative to the working directory
};

struct PipelineConfig {
  nlohmann::ordered_json resolved;

  uint64_t seed = 0;
  std::string out_dir;

  std::string normalization_table;  // empty: built-in table
  bool normalization_extend = true;

  std::vector<SourceConfig> sources;
  ingest::SourceQuery query;
  int max_attempts = 3;
  int retry_backoff_ms = 200;

  double language_threshold = 0.6;
  std::string filter_lexicon;

  std::string annotation_store;
  std::string annotators;
  std::string host;
  int port = 8080;
  int lease_timeout_minutes = 30;
  int required_votes = 3;

  std::string gold;

  eval::SplitRatios split;
  uint64_t split_seed = 0;

  std::optional<balance::Mode> linear_balance;
  std::optional<balance::Mode> sbilstm_balance;
  int smote_k = 5;
  uint64_t balance_seed = 0;

  int min_df = 1;
  bool embeddings_enabled = true;
  std::string embeddings_pretrained;  // empty: train on the training split
  features::EmbeddingConfig embeddings;

  std::string rule_lexicon;
  std::array<Label, 3> precedence{};
  models::LinearConfig linear;
  models::SBiLstmConfig sbilstm;

  eval::Averaging averaging = eval::Averaging::kMacro;
  std::vector<std::string> compare_models;

  std::string predict_model;
};

// Defaults with seeds and paths unresolved (null).
nlohmann::ordered_json DefaultConfigJson();

// `path` may be empty for an all-defaults configuration. Unknown keys, type
// mismatches and invalid values raise kConfig.
PipelineConfig LoadConfig(const std::string &path,
                          const ConfigOverrides &overrides = {});
PipelineConfig ResolveConfig(const nlohmann::ordered_json &user,
                             const std::string &base_dir,
                             const ConfigOverrides &overrides = {});

}  // namespace amhs::pipeline

#endif  // AMHS_PIPELINE_CONFIG_H_
