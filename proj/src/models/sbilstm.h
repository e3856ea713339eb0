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

// Stacked bidirectional LSTM classifier. Each sequence is run only over
// its true length, so padding never reaches the recurrent state. The
// document vector is the top layer's last forward state concatenated with
// its first backward state, followed by dropout, a ReLU dense layer and a
// 4-way softmax.

#ifndef AMHS_MODELS_SBILSTM_H_
#define AMHS_MODELS_SBILSTM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "common/rng.h"
#include "features/embeddings.h"
#include "features/sequences.h"
#include "features/vocabulary.h"
#include "models/prediction.h"

namespace amhs::models {

struct SBiLstmConfig {
  int embedding_dim = 100;
  int hidden = 64;
  int layers = 2;
  int dense = 64;
  double dropout = 0.5;
  int max_len = 100;
  int batch_size = 32;
  int epochs = 30;
  double learning_rate = 0.002;
  double clip_norm = 5.0;
  int patience = 5;
  double forget_bias = 1.0;
  uint64_t seed = 1;

  nlohmann::ordered_json ToJson() const;
  static SBiLstmConfig FromJson(const nlohmann::ordered_json &j);
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_macro_f1 = -1.0;  // -1 without a validation set
};

class SBiLstmModel {
 public:
  SBiLstmModel() = default;
  // Random initialisation; vocab_size includes the two special rows.
  SBiLstmModel(const SBiLstmConfig &config, size_t vocab_size);

  // Copies table vectors into rows of known vocabulary tokens.
  void InitEmbeddings(const features::Vocabulary &vocab,
                      const features::EmbeddingTable &table);

  const SBiLstmConfig &config() const { return config_; }
  size_t vocab_size() const { return vocab_size_; }

  std::vector<double> &parameters() { return params_; }
  const std::vector<double> &parameters() const { return params_; }

  // Inference; ids past `length` are ignored.
  Prediction Predict(std::span<const int32_t> ids, int length) const;

  // Cross-entropy for one example. Adds d(loss)/d(params) into *grad when
  // grad is non-null. Dropout applies only when dropout_rng is non-null.
  double LossAndGradient(std::span<const int32_t> ids, int length, Label y,
                         Rng *dropout_rng, std::vector<double> *grad) const;

  nlohmann::ordered_json ToJson() const;
  static SBiLstmModel FromJson(const nlohmann::ordered_json &j);

 private:
  struct Layout;
  Layout MakeLayout() const;
  double Forward(std::span<const int32_t> ids, int length, Label y,
                 Rng *dropout_rng, std::vector<double> *grad,
                 Distribution *probs) const;

  SBiLstmConfig config_;
  size_t vocab_size_ = 0;
  std::vector<double> params_;
};

struct SBiLstmData {
  const features::SequenceBatch *sequences = nullptr;
  const std::vector<Label> *labels = nullptr;
};

// Adam on mini-batches with global-norm clipping; early stopping on
// validation macro-F1 when `val` is given. Throws Error(kNumeric) on a
// non-finite loss and Error(kConfig) on shape mismatches.
SBiLstmModel TrainSBiLstm(const SBiLstmData &train, const SBiLstmData *val,
                          const SBiLstmConfig &config, size_t vocab_size,
                          const features::Vocabulary *vocab = nullptr,
                          const features::EmbeddingTable *table = nullptr,
                          std::vector<EpochStats> *history = nullptr);

}  // namespace amhs::models

#endif  // AMHS_MODELS_SBILSTM_H_
