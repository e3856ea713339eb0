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

#include "models/sbilstm.h"

#include <Eigen/Dense>
#include <cmath>

#include "common/error.h"
#include "common/log.h"
#include "eval/metrics.h"

namespace amhs::models {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatMap = Eigen::Map<MatrixXd>;
using ConstMatMap = Eigen::Map<const MatrixXd>;
using VecMap = Eigen::Map<VectorXd>;
using ConstVecMap = Eigen::Map<const VectorXd>;

nlohmann::ordered_json SBiLstmConfig::ToJson() const {
  return {{"embedding_dim", embedding_dim}, {"hidden", hidden},
          {"layers", layers},               {"dense", dense},
          {"dropout", dropout},             {"max_len", max_len},
          {"batch_size", batch_size},       {"epochs", epochs},
          {"learning_rate", learning_rate}, {"clip_norm", clip_norm},
          {"patience", patience},           {"forget_bias", forget_bias},
          {"seed", seed}};
}

SBiLstmConfig SBiLstmConfig::FromJson(const nlohmann::ordered_json &j) {
  SBiLstmConfig c;
  c.embedding_dim = j.at("embedding_dim").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.layers = j.at("layers").get<int>();
  c.dense = j.at("dense").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.max_len = j.at("max_len").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.clip_norm = j.at("clip_norm").get<double>();
  c.patience = j.at("patience").get<int>();
  c.forget_bias = j.at("forget_bias").get<double>();
  c.seed = j.at("seed").get<uint64_t>();
  return c;
}

struct SBiLstmModel::Layout {
  struct Dir {
    size_t w, u, b;
    int in;
  };
  int e, h, d;
  size_t vocab;
  size_t emb;
  std::vector<std::array<Dir, 2>> dirs;
  size_t dense_w, dense_b, out_w, out_b, total;
};

SBiLstmModel::Layout SBiLstmModel::MakeLayout() const {
  Layout l;
  l.e = config_.embedding_dim;
  l.h = config_.hidden;
  l.d = config_.dense;
  l.vocab = vocab_size_;
  size_t off = 0;
  l.emb = off;
  off += vocab_size_ * l.e;
  for (int layer = 0; layer < config_.layers; ++layer) {
    std::array<Layout::Dir, 2> pair;
    for (auto &dir : pair) {
      dir.in = layer == 0 ? l.e : 2 * l.h;
      dir.w = off;
      off += static_cast<size_t>(4 * l.h) * dir.in;
      dir.u = off;
      off += static_cast<size_t>(4 * l.h) * l.h;
      dir.b = off;
      off += 4 * l.h;
    }
    l.dirs.push_back(pair);
  }
  l.dense_w = off;
  off += static_cast<size_t>(l.d) * 2 * l.h;
  l.dense_b = off;
  off += l.d;
  l.out_w = off;
  off += static_cast<size_t>(kNumLabels) * l.d;
  l.out_b = off;
  off += kNumLabels;
  l.total = off;
  return l;
}

namespace {

void CheckConfig(const SBiLstmConfig &c) {
  if (c.embedding_dim < 1 || c.hidden < 1 || c.layers < 1 || c.dense < 1 ||
      c.max_len < 1 || c.batch_size < 1 || c.epochs < 0 || c.patience < 0 ||
      !(c.dropout >= 0.0 && c.dropout < 1.0) || !(c.learning_rate > 0.0) ||
      !(c.clip_norm > 0.0)) {
    Fail(ErrorCode::kConfig, "invalid sbilstm configuration");
  }
}

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Activations of one direction of one layer, kept for backprop.
struct DirCache {
  MatrixXd gates;  // 4H x T, post-activation i, f, g, o
  MatrixXd c;      // H x T
  MatrixXd tanh_c;
  MatrixXd h;
};

}  // namespace

SBiLstmModel::SBiLstmModel(const SBiLstmConfig &config, size_t vocab_size)
    : config_(config), vocab_size_(vocab_size) {
  CheckConfig(config_);
  if (vocab_size < 2) Fail(ErrorCode::kConfig, "vocabulary too small");
  Layout l = MakeLayout();
  params_.assign(l.total, 0.0);
  Rng rng(DeriveSeed(config_.seed, 101));
  auto glorot = [&](size_t off, size_t rows, size_t cols) {
    double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (size_t k = 0; k < rows * cols; ++k) params_[off + k] = rng.Uniform(-a, a);
  };
  // Column 0 (padding) stays zero.
  for (size_t k = l.e; k < vocab_size_ * l.e; ++k) {
    params_[l.emb + k] = rng.Normal(0.0, 0.1);
  }
  for (const auto &pair : l.dirs) {
    for (const auto &dir : pair) {
      glorot(dir.w, 4 * l.h, dir.in);
      glorot(dir.u, 4 * l.h, l.h);
      for (int k = 0; k < l.h; ++k) params_[dir.b + l.h + k] = config_.forget_bias;
    }
  }
  glorot(l.dense_w, l.d, 2 * l.h);
  glorot(l.out_w, kNumLabels, l.d);
}

void SBiLstmModel::InitEmbeddings(const features::Vocabulary &vocab,
                                  const features::EmbeddingTable &table) {
  if (table.dim() != config_.embedding_dim) {
    Fail(ErrorCode::kConfig, "embedding table has dim " +
                                 std::to_string(table.dim()) + ", model wants " +
                                 std::to_string(config_.embedding_dim));
  }
  if (vocab.size() != vocab_size_) {
    Fail(ErrorCode::kConfig, "vocabulary size does not match the model");
  }
  const size_t e = config_.embedding_dim;
  for (size_t r = features::Vocabulary::kNumSpecials; r < vocab_size_; ++r) {
    auto v = table.Vector(vocab.Token(static_cast<int>(r)));
    bool any = false;
    for (float x : v) any = any || x != 0.0f;
    if (!any) continue;
    // E x V column-major: token r is a contiguous column.
    for (size_t k = 0; k < e; ++k) params_[r * e + k] = v[k];
  }
}

double SBiLstmModel::Forward(std::span<const int32_t> ids, int length, Label y,
                             Rng *dropout_rng, std::vector<double> *grad,
                             Distribution *probs) const {
  const Layout l = MakeLayout();
  const int h = l.h;
  const int t_len = length;
  if (length < 0 || static_cast<size_t>(length) > ids.size()) {
    Fail(ErrorCode::kInvalidArgument, "sequence length out of range");
  }
  const double *p = params_.data();
  ConstMatMap emb(p + l.emb, l.e, l.vocab);

  MatrixXd x(l.e, t_len);
  for (int t = 0; t < t_len; ++t) {
    int32_t id = ids[t];
    if (id < 0 || static_cast<size_t>(id) >= l.vocab) {
      Fail(ErrorCode::kInvalidArgument,
           "token id " + std::to_string(id) + " outside the vocabulary");
    }
    x.col(t) = emb.col(id);
  }

  const int n_layers = static_cast<int>(l.dirs.size());
  std::vector<MatrixXd> inputs;  // input to each layer
  std::vector<std::array<DirCache, 2>> caches(n_layers);
  inputs.push_back(std::move(x));
  for (int layer = 0; layer < n_layers; ++layer) {
    const MatrixXd &in = inputs[layer];
    MatrixXd out(2 * h, t_len);
    for (int d = 0; d < 2; ++d) {
      const auto &dir = l.dirs[layer][d];
      ConstMatMap w(p + dir.w, 4 * h, dir.in);
      ConstMatMap u(p + dir.u, 4 * h, h);
      ConstVecMap b(p + dir.b, 4 * h);
      DirCache &cache = caches[layer][d];
      cache.gates.resize(4 * h, t_len);
      cache.c.resize(h, t_len);
      cache.tanh_c.resize(h, t_len);
      cache.h.resize(h, t_len);
      MatrixXd pre = w * in;
      pre.colwise() += b;
      VectorXd h_prev = VectorXd::Zero(h);
      VectorXd c_prev = VectorXd::Zero(h);
      for (int s = 0; s < t_len; ++s) {
        int t = d == 0 ? s : t_len - 1 - s;
        VectorXd a = pre.col(t) + u * h_prev;
        for (int k = 0; k < h; ++k) {
          a[k] = Sigmoid(a[k]);
          a[h + k] = Sigmoid(a[h + k]);
          a[2 * h + k] = std::tanh(a[2 * h + k]);
          a[3 * h + k] = Sigmoid(a[3 * h + k]);
        }
        VectorXd c = a.segment(h, h).cwiseProduct(c_prev) +
                     a.segment(0, h).cwiseProduct(a.segment(2 * h, h));
        VectorXd tc = c.array().tanh();
        VectorXd hv = a.segment(3 * h, h).cwiseProduct(tc);
        cache.gates.col(t) = a;
        cache.c.col(t) = c;
        cache.tanh_c.col(t) = tc;
        cache.h.col(t) = hv;
        out.block(d * h, t, h, 1) = hv;
        h_prev = hv;
        c_prev = c;
      }
    }
    inputs.push_back(std::move(out));
  }

  VectorXd feat = VectorXd::Zero(2 * h);
  if (t_len > 0) {
    feat.head(h) = caches.back()[0].h.col(t_len - 1);
    feat.tail(h) = caches.back()[1].h.col(0);
  }
  VectorXd mask = VectorXd::Ones(2 * h);
  if (dropout_rng && config_.dropout > 0.0) {
    double keep = 1.0 - config_.dropout;
    for (int k = 0; k < 2 * h; ++k) {
      mask[k] = dropout_rng->Uniform() < keep ? 1.0 / keep : 0.0;
    }
  }
  VectorXd feat_d = feat.cwiseProduct(mask);
  ConstMatMap dense_w(p + l.dense_w, l.d, 2 * h);
  ConstVecMap dense_b(p + l.dense_b, l.d);
  ConstMatMap out_w(p + l.out_w, kNumLabels, l.d);
  ConstVecMap out_b(p + l.out_b, kNumLabels);
  VectorXd z1 = dense_w * feat_d + dense_b;
  VectorXd a1 = z1.cwiseMax(0.0);
  VectorXd logits = out_w * a1 + out_b;

  Distribution lg;
  for (int c = 0; c < kNumLabels; ++c) lg[c] = logits[c];
  Distribution pr = Softmax(lg);
  if (probs) *probs = pr;
  double m = *std::max_element(lg.begin(), lg.end());
  double s = 0.0;
  for (double v : lg) s += std::exp(v - m);
  const double loss = m + std::log(s) - lg[LabelIndex(y)];
  if (!grad) return loss;

  double *g = grad->data();
  VectorXd dlogits(kNumLabels);
  for (int c = 0; c < kNumLabels; ++c) dlogits[c] = pr[c];
  dlogits[LabelIndex(y)] -= 1.0;
  MatMap(g + l.out_w, kNumLabels, l.d) += dlogits * a1.transpose();
  VecMap(g + l.out_b, kNumLabels) += dlogits;
  VectorXd dz1 = out_w.transpose() * dlogits;
  for (int k = 0; k < l.d; ++k) {
    if (z1[k] <= 0.0) dz1[k] = 0.0;
  }
  MatMap(g + l.dense_w, l.d, 2 * h) += dz1 * feat_d.transpose();
  VecMap(g + l.dense_b, l.d) += dz1;
  VectorXd dfeat = (dense_w.transpose() * dz1).cwiseProduct(mask);
  if (t_len == 0) return loss;

  MatrixXd dy = MatrixXd::Zero(2 * h, t_len);
  dy.block(0, t_len - 1, h, 1) = dfeat.head(h);
  dy.block(h, 0, h, 1) = dfeat.tail(h);
  for (int layer = n_layers - 1; layer >= 0; --layer) {
    const MatrixXd &in = inputs[layer];
    MatrixXd dx = MatrixXd::Zero(in.rows(), t_len);
    for (int d = 0; d < 2; ++d) {
      const auto &dir = l.dirs[layer][d];
      ConstMatMap w(p + dir.w, 4 * h, dir.in);
      ConstMatMap u(p + dir.u, 4 * h, h);
      const DirCache &cache = caches[layer][d];
      MatrixXd dpre(4 * h, t_len);
      MatMap du(g + dir.u, 4 * h, h);
      VectorXd dh_next = VectorXd::Zero(h);
      VectorXd dc_next = VectorXd::Zero(h);
      for (int s = t_len - 1; s >= 0; --s) {
        int t = d == 0 ? s : t_len - 1 - s;
        int t_prev = d == 0 ? t - 1 : t + 1;
        bool has_prev = s > 0;
        auto a = cache.gates.col(t);
        VectorXd dh = dy.block(d * h, t, h, 1) + dh_next;
        VectorXd dc = dc_next;
        VectorXd da(4 * h);
        for (int k = 0; k < h; ++k) {
          double i = a[k], f = a[h + k], gg = a[2 * h + k], o = a[3 * h + k];
          double tc = cache.tanh_c(k, t);
          double c_prev = has_prev ? cache.c(k, t_prev) : 0.0;
          dc[k] += dh[k] * o * (1.0 - tc * tc);
          da[k] = dc[k] * gg * i * (1.0 - i);
          da[h + k] = dc[k] * c_prev * f * (1.0 - f);
          da[2 * h + k] = dc[k] * i * (1.0 - gg * gg);
          da[3 * h + k] = dh[k] * tc * o * (1.0 - o);
          dc[k] *= f;
        }
        dpre.col(t) = da;
        if (has_prev) du += da * cache.h.col(t_prev).transpose();
        dh_next = u.transpose() * da;
        dc_next = dc;
      }
      MatMap(g + dir.w, 4 * h, dir.in) += dpre * in.transpose();
      VecMap(g + dir.b, 4 * h) += dpre.rowwise().sum();
      dx += w.transpose() * dpre;
    }
    if (layer > 0) {
      dy = std::move(dx);
    } else {
      MatMap demb(g + l.emb, l.e, l.vocab);
      for (int t = 0; t < t_len; ++t) demb.col(ids[t]) += dx.col(t);
    }
  }
  return loss;
}

Prediction SBiLstmModel::Predict(std::span<const int32_t> ids,
                                 int length) const {
  Distribution probs;
  Forward(ids, length, Label::kNonhate, nullptr, nullptr, &probs);
  return FromDistribution(probs);
}

double SBiLstmModel::LossAndGradient(std::span<const int32_t> ids, int length,
                                     Label y, Rng *dropout_rng,
                                     std::vector<double> *grad) const {
  if (grad && grad->size() != params_.size()) grad->assign(params_.size(), 0.0);
  return Forward(ids, length, y, dropout_rng, grad, nullptr);
}

nlohmann::ordered_json SBiLstmModel::ToJson() const {
  nlohmann::ordered_json j;
  j["config"] = config_.ToJson();
  j["vocab_size"] = vocab_size_;
  j["values"] = params_;
  return j;
}

SBiLstmModel SBiLstmModel::FromJson(const nlohmann::ordered_json &j) {
  SBiLstmModel m;
  m.config_ = SBiLstmConfig::FromJson(j.at("config"));
  CheckConfig(m.config_);
  m.vocab_size_ = j.at("vocab_size").get<size_t>();
  m.params_ = j.at("values").get<std::vector<double>>();
  if (m.params_.size() != m.MakeLayout().total) {
    Fail(ErrorCode::kParse, "sbilstm parameter count does not match shapes");
  }
  return m;
}

namespace {

struct Adam {
  std::vector<double> m, v;
  double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  int64_t step = 0;

  void Update(std::vector<double> &params, const std::vector<double> &g,
              double lr) {
    if (m.empty()) {
      m.assign(params.size(), 0.0);
      v.assign(params.size(), 0.0);
    }
    ++step;
    double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
    double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
    for (size_t k = 0; k < params.size(); ++k) {
      m[k] = b1 * m[k] + (1.0 - b1) * g[k];
      v[k] = b2 * v[k] + (1.0 - b2) * g[k] * g[k];
      params[k] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
    }
  }
};

double MacroF1(const SBiLstmModel &model, const SBiLstmData &data) {
  std::vector<Label> pred;
  for (size_t r = 0; r < data.sequences->rows(); ++r) {
    pred.push_back(
        model.Predict(data.sequences->Row(r), data.sequences->lengths[r]).label);
  }
  return eval::ComputeMetrics(*data.labels, pred).macro_f1;
}

void CheckData(const SBiLstmData &data, const SBiLstmConfig &config,
               const char *what) {
  if (!data.sequences || !data.labels ||
      data.sequences->rows() != data.labels->size()) {
    Fail(ErrorCode::kConfig,
         std::string(what) + ": sequence and label counts differ");
  }
  if (data.sequences->max_len != static_cast<size_t>(config.max_len)) {
    Fail(ErrorCode::kConfig, std::string(what) + ": sequences padded to " +
                                 std::to_string(data.sequences->max_len) +
                                 ", config max_len is " +
                                 std::to_string(config.max_len));
  }
}

}  // namespace

SBiLstmModel TrainSBiLstm(const SBiLstmData &train, const SBiLstmData *val,
                          const SBiLstmConfig &config, size_t vocab_size,
                          const features::Vocabulary *vocab,
                          const features::EmbeddingTable *table,
                          std::vector<EpochStats> *history) {
  CheckConfig(config);
  CheckData(train, config, "train");
  if (train.labels->empty()) Fail(ErrorCode::kConfig, "empty training set");
  if (val) CheckData(*val, config, "validation");
  if (val && val->labels->empty()) val = nullptr;

  SBiLstmModel model(config, vocab_size);
  if (table) {
    if (!vocab) Fail(ErrorCode::kConfig, "embedding init needs the vocabulary");
    model.InitEmbeddings(*vocab, *table);
  }
  Rng order_rng(DeriveSeed(config.seed, 1));
  Rng dropout_rng(DeriveSeed(config.seed, 2));
  Adam adam;
  const size_t n = train.labels->size();
  std::vector<size_t> order(n);
  std::vector<double> grad(model.parameters().size());

  SBiLstmModel best = model;
  double best_f1 = -1.0;
  int since_best = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (size_t i = 0; i < n; ++i) order[i] = i;
    order_rng.Shuffle(order);
    double total = 0.0;
    for (size_t start = 0; start < n; start += config.batch_size) {
      size_t end = std::min(n, start + static_cast<size_t>(config.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (size_t b = start; b < end; ++b) {
        size_t i = order[b];
        double loss = model.LossAndGradient(train.sequences->Row(i),
                                            train.sequences->lengths[i],
                                            (*train.labels)[i], &dropout_rng,
                                            &grad);
        if (!std::isfinite(loss)) {
          Fail(ErrorCode::kNumeric,
               "sbilstm loss not finite at epoch " + std::to_string(epoch) +
                   ", example " + std::to_string(i) +
                   "; lower learning_rate or clip_norm");
        }
        total += loss;
      }
      double scale = 1.0 / static_cast<double>(end - start);
      double norm2 = 0.0;
      for (double &gv : grad) {
        gv *= scale;
        norm2 += gv * gv;
      }
      double norm = std::sqrt(norm2);
      if (norm > config.clip_norm) {
        double c = config.clip_norm / norm;
        for (double &gv : grad) gv *= c;
      }
      adam.Update(model.parameters(), grad, config.learning_rate);
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = total / static_cast<double>(n);
    if (val) stats.val_macro_f1 = MacroF1(model, *val);
    Log().info("sbilstm epoch {} loss {:.6f} val_macro_f1 {:.4f}", epoch,
               stats.train_loss, stats.val_macro_f1);
    if (history) history->push_back(stats);
    if (!val) continue;
    if (stats.val_macro_f1 > best_f1) {
      best_f1 = stats.val_macro_f1;
      best = model;
      since_best = 0;
    } else if (++since_best > config.patience) {
      Log().info("sbilstm early stop at epoch {}", epoch);
      break;
    }
  }
  return val ? best : model;
}

}  // namespace amhs::models
