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

#include "features/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/rng.h"
#include "textnorm/utf8.h"

namespace amhs::features {
namespace {

constexpr const char kNgramPrefix[] = "ngram:";
constexpr size_t kNegativeTableSize = 1 << 20;

std::string FormatFloat(float v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) Fail(ErrorCode::kInternal, "to_chars failed");
  return std::string(buf, ptr);
}

float Sigmoid(float x) {
  if (x > 8.0f) return 1.0f;
  if (x < -8.0f) return 0.0f;
  return 1.0f / (1.0f + std::exp(-x));
}

// Flat row-major matrix of floats.
struct Matrix {
  size_t cols = 0;
  std::vector<float> data;

  Matrix(size_t rows, size_t cols_) : cols(cols_), data(rows * cols_, 0.0f) {}
  float *Row(size_t r) { return data.data() + r * cols; }
  const float *Row(size_t r) const { return data.data() + r * cols; }
};

}  // namespace

std::vector<std::string> CharNgrams(const std::string &token, int min_n,
                                    int max_n) {
  std::u32string chars = U"<" + textnorm::DecodeUtf8(token) + U">";
  std::vector<std::string> out;
  for (size_t start = 0; start < chars.size(); ++start) {
    for (int n = min_n; n <= max_n; ++n) {
      if (start + n > chars.size()) break;
      out.push_back(textnorm::EncodeUtf8(
          std::u32string_view(chars).substr(start, n)));
    }
  }
  return out;
}

EmbeddingTable::EmbeddingTable(int dim, int min_n, int max_n)
    : dim_(dim), min_n_(min_n), max_n_(max_n) {
  if (dim <= 0) Fail(ErrorCode::kInvalidArgument, "dimension must be > 0");
  if (min_n < 1 || max_n < min_n) {
    Fail(ErrorCode::kInvalidArgument, "bad n-gram range");
  }
}

void EmbeddingTable::AddWord(const std::string &token, std::vector<float> vec) {
  if (static_cast<int>(vec.size()) != dim_) {
    Fail(ErrorCode::kInvalidArgument, "vector dimension mismatch");
  }
  if (word_vectors_.emplace(token, std::move(vec)).second) {
    words_.push_back(token);
  }
}

void EmbeddingTable::AddNgram(const std::string &ngram,
                              std::vector<float> vec) {
  if (static_cast<int>(vec.size()) != dim_) {
    Fail(ErrorCode::kInvalidArgument, "vector dimension mismatch");
  }
  if (ngram_vectors_.emplace(ngram, std::move(vec)).second) {
    ngrams_.push_back(ngram);
  }
}

const std::vector<float> *EmbeddingTable::WordVector(
    const std::string &token) const {
  auto it = word_vectors_.find(token);
  return it == word_vectors_.end() ? nullptr : &it->second;
}

const std::vector<float> *EmbeddingTable::NgramVector(
    const std::string &ngram) const {
  auto it = ngram_vectors_.find(ngram);
  return it == ngram_vectors_.end() ? nullptr : &it->second;
}

std::vector<float> EmbeddingTable::Vector(const std::string &token) const {
  if (const auto *v = WordVector(token)) return *v;
  std::vector<float> sum(dim_, 0.0f);
  int found = 0;
  for (const auto &ngram : CharNgrams(token, min_n_, max_n_)) {
    const auto *v = NgramVector(ngram);
    if (!v) continue;
    for (int i = 0; i < dim_; ++i) sum[i] += (*v)[i];
    ++found;
  }
  if (found > 0) {
    for (auto &x : sum) x /= static_cast<float>(found);
  }
  return sum;
}

std::string EmbeddingTable::Serialize() const {
  std::string out = std::to_string(words_.size() + ngrams_.size()) + " " +
                    std::to_string(dim_) + "\n";
  auto append_row = [&](const std::string &key, const std::vector<float> &v) {
    out += key;
    for (float x : v) {
      out += ' ';
      out += FormatFloat(x);
    }
    out += '\n';
  };
  for (const auto &w : words_) append_row(w, word_vectors_.at(w));
  std::vector<std::string> sorted = ngrams_;
  std::sort(sorted.begin(), sorted.end());
  for (const auto &g : sorted) {
    append_row(kNgramPrefix + g, ngram_vectors_.at(g));
  }
  return out;
}

EmbeddingTable EmbeddingTable::Parse(const std::string &text, int min_n,
                                     int max_n) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) Fail(ErrorCode::kParse, "empty table");
  size_t count = 0;
  int dim = 0;
  {
    std::istringstream h(header);
    if (!(h >> count >> dim) || dim <= 0) {
      Fail(ErrorCode::kParse, "bad embedding header \"" + header + "\"");
    }
  }
  EmbeddingTable table(dim, min_n, max_n);
  std::string line;
  size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t space = line.find(' ');
    if (space == std::string::npos) {
      Fail(ErrorCode::kParse, "bad embedding row " + std::to_string(rows + 2));
    }
    std::string key = line.substr(0, space);
    std::vector<float> vec;
    vec.reserve(dim);
    const char *p = line.data() + space;
    const char *end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float v;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        Fail(ErrorCode::kParse,
             "bad number in embedding row " + std::to_string(rows + 2));
      }
      vec.push_back(v);
      p = next;
    }
    if (static_cast<int>(vec.size()) != dim) {
      Fail(ErrorCode::kParse,
           "embedding row " + std::to_string(rows + 2) + " has wrong width");
    }
    if (key.rfind(kNgramPrefix, 0) == 0) {
      table.AddNgram(key.substr(sizeof(kNgramPrefix) - 1), std::move(vec));
    } else {
      table.AddWord(key, std::move(vec));
    }
    ++rows;
  }
  if (rows != count) {
    Fail(ErrorCode::kParse, "embedding table truncated: header says " +
                                std::to_string(count) + " rows, found " +
                                std::to_string(rows));
  }
  return table;
}

void EmbeddingTable::Save(const std::string &path) const {
  WriteFileAtomic(path, Serialize());
}

EmbeddingTable EmbeddingTable::Load(const std::string &path, int min_n,
                                    int max_n) {
  return Parse(ReadFile(path), min_n, max_n);
}

EmbeddingTable TrainEmbeddings(std::span<const textnorm::CleanDocument> docs,
                               const EmbeddingConfig &config) {
  if (config.dim <= 0) Fail(ErrorCode::kInvalidArgument, "dim must be > 0");
  if (config.epochs < 0 || config.window < 1 || config.negatives < 0) {
    Fail(ErrorCode::kInvalidArgument, "bad embedding training parameters");
  }
  if (docs.empty()) Fail(ErrorCode::kInvalidArgument, "empty corpus");

  std::map<std::string, int64_t> counts;
  for (const auto &doc : docs) {
    for (const auto &t : doc.tokens) ++counts[t];
  }
  std::vector<std::pair<std::string, int64_t>> vocab;
  for (auto &[t, c] : counts) {
    if (c >= config.min_count) vocab.emplace_back(t, c);
  }
  std::stable_sort(vocab.begin(), vocab.end(), [](const auto &a, const auto &b) {
    return a.second > b.second;
  });
  if (vocab.empty()) Fail(ErrorCode::kInvalidArgument, "no trainable tokens");

  std::unordered_map<std::string, int> word_id;
  for (size_t i = 0; i < vocab.size(); ++i) word_id[vocab[i].first] = i;

  // Input rows: words first, then n-grams in first-seen order.
  std::unordered_map<std::string, int> ngram_id;
  std::vector<std::string> ngram_list;
  std::vector<std::vector<int>> subwords(vocab.size());
  for (size_t w = 0; w < vocab.size(); ++w) {
    subwords[w].push_back(static_cast<int>(w));
    for (const auto &g : CharNgrams(vocab[w].first, config.min_n,
                                    config.max_n)) {
      auto [it, inserted] = ngram_id.emplace(g, ngram_list.size());
      if (inserted) ngram_list.push_back(g);
      subwords[w].push_back(static_cast<int>(vocab.size()) + it->second);
    }
  }

  const size_t dim = config.dim;
  Rng rng(config.seed);
  Matrix input(vocab.size() + ngram_list.size(), dim);
  Matrix output(vocab.size(), dim);
  for (float &x : input.data) {
    x = static_cast<float>(rng.Uniform(-1.0 / dim, 1.0 / dim));
  }

  std::vector<int> negative_table;
  {
    double z = 0.0;
    for (const auto &v : vocab) z += std::pow(static_cast<double>(v.second), 0.75);
    for (size_t w = 0; w < vocab.size(); ++w) {
      double share = std::pow(static_cast<double>(vocab[w].second), 0.75) / z;
      size_t n = static_cast<size_t>(std::ceil(share * kNegativeTableSize));
      negative_table.insert(negative_table.end(), n, static_cast<int>(w));
    }
    rng.Shuffle(negative_table);
  }

  std::vector<std::vector<int>> corpus;
  int64_t total_tokens = 0;
  for (const auto &doc : docs) {
    std::vector<int> ids;
    for (const auto &t : doc.tokens) {
      auto it = word_id.find(t);
      if (it != word_id.end()) ids.push_back(it->second);
    }
    total_tokens += ids.size();
    corpus.push_back(std::move(ids));
  }

  std::vector<float> hidden(dim), grad(dim);
  const double total_work =
      std::max<double>(1.0, static_cast<double>(total_tokens) * config.epochs);
  int64_t processed = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto &ids : corpus) {
      for (size_t w = 0; w < ids.size(); ++w, ++processed) {
        float lr = static_cast<float>(config.learning_rate *
                                      (1.0 - processed / total_work));
        const auto &units = subwords[ids[w]];
        std::fill(hidden.begin(), hidden.end(), 0.0f);
        for (int row : units) {
          const float *r = input.Row(row);
          for (size_t k = 0; k < dim; ++k) hidden[k] += r[k];
        }
        float inv = 1.0f / static_cast<float>(units.size());
        for (float &h : hidden) h *= inv;

        int boundary = 1 + static_cast<int>(rng.Below(config.window));
        for (int c = -boundary; c <= boundary; ++c) {
          if (c == 0) continue;
          int64_t pos = static_cast<int64_t>(w) + c;
          if (pos < 0 || pos >= static_cast<int64_t>(ids.size())) continue;
          std::fill(grad.begin(), grad.end(), 0.0f);
          auto update = [&](int target, float label) {
            float *out = output.Row(target);
            float dot = 0.0f;
            for (size_t k = 0; k < dim; ++k) dot += out[k] * hidden[k];
            float alpha = lr * (label - Sigmoid(dot));
            for (size_t k = 0; k < dim; ++k) {
              grad[k] += alpha * out[k];
              out[k] += alpha * hidden[k];
            }
          };
          int target = ids[pos];
          update(target, 1.0f);
          for (int n = 0; n < config.negatives; ++n) {
            int neg;
            do {
              neg = negative_table[rng.Below(negative_table.size())];
            } while (neg == target && vocab.size() > 1);
            if (neg == target) break;
            update(neg, 0.0f);
          }
          for (int row : units) {
            float *r = input.Row(row);
            for (size_t k = 0; k < dim; ++k) r[k] += grad[k];
          }
        }
      }
    }
  }

  EmbeddingTable table(config.dim, config.min_n, config.max_n);
  for (size_t w = 0; w < vocab.size(); ++w) {
    std::vector<float> v(dim, 0.0f);
    for (int row : subwords[w]) {
      const float *r = input.Row(row);
      for (size_t k = 0; k < dim; ++k) v[k] += r[k];
    }
    float inv = 1.0f / static_cast<float>(subwords[w].size());
    for (float &x : v) x *= inv;
    table.AddWord(vocab[w].first, std::move(v));
  }
  for (size_t g = 0; g < ngram_list.size(); ++g) {
    const float *r = input.Row(vocab.size() + g);
    table.AddNgram(ngram_list[g], std::vector<float>(r, r + dim));
  }
  return table;
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace amhs::features
