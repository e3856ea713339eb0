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

#include "balance/smote.h"

#include <algorithm>

#include "common/error.h"

namespace amhs::balance {
namespace {

double SquaredDistance(const Vector &a, const Vector &b) {
  double s = 0.0;
  for (size_t c = 0; c < a.size(); ++c) {
    double d = a[c] - b[c];
    s += d * d;
  }
  return s;
}

std::vector<std::vector<size_t>> ByClass(const std::vector<Label> &y) {
  std::vector<std::vector<size_t>> members(kNumLabels);
  for (size_t i = 0; i < y.size(); ++i) members[LabelIndex(y[i])].push_back(i);
  for (int c = 0; c < kNumLabels; ++c) {
    if (members[c].empty()) {
      Fail(ErrorCode::kInvalidArgument,
           "class " + std::string(kLabelNames[c]) + " has no examples");
    }
  }
  return members;
}

}  // namespace

std::vector<size_t> NearestNeighbors(const std::vector<Vector> &points,
                                     size_t i, size_t k) {
  std::vector<std::pair<double, size_t>> dist;
  dist.reserve(points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    if (j != i) dist.emplace_back(SquaredDistance(points[i], points[j]), j);
  }
  k = std::min(k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<size_t> out(k);
  for (size_t r = 0; r < k; ++r) out[r] = dist[r].second;
  return out;
}

std::vector<Vector> Smote(const std::vector<Vector> &minority,
                          size_t target_count, int k, uint64_t seed,
                          const LambdaSource &lambda) {
  const size_t n = minority.size();
  if (n < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "cannot interpolate: need at least 2 minority points");
  }
  if (k < 1 || static_cast<size_t>(k) > n - 1) {
    Fail(ErrorCode::kInvalidArgument,
         "k must be in [1, " + std::to_string(n - 1) + "], got " +
             std::to_string(k));
  }
  if (target_count < n) {
    Fail(ErrorCode::kInvalidArgument, "target_count below minority size");
  }
  const size_t dim = minority[0].size();
  for (const auto &p : minority) {
    if (p.size() != dim) Fail(ErrorCode::kInvalidArgument, "ragged vectors");
  }

  Rng rng(seed);
  std::vector<std::vector<size_t>> knn(n);
  std::vector<Vector> out;
  out.reserve(target_count - n);
  for (size_t s = 0; s < target_count - n; ++s) {
    size_t base = s % n;
    if (knn[base].empty()) knn[base] = NearestNeighbors(minority, base, k);
    size_t partner = knn[base][rng.Below(knn[base].size())];
    double lam = lambda ? lambda(rng) : rng.Uniform();
    const Vector &a = minority[base];
    const Vector &b = minority[partner];
    Vector v(dim);
    for (size_t c = 0; c < dim; ++c) v[c] = a[c] + lam * (b[c] - a[c]);
    out.push_back(std::move(v));
  }
  return out;
}

const char *ModeName(Mode mode) {
  return mode == Mode::kSmote ? "smote" : "duplicate";
}

Mode ParseMode(const std::string &name) {
  if (name == "smote") return Mode::kSmote;
  if (name == "duplicate") return Mode::kDuplicate;
  Fail(ErrorCode::kConfig, "unknown balance mode '" + name + "'");
}

ClassCounts CountLabels(const std::vector<Label> &labels) {
  ClassCounts counts{};
  for (Label l : labels) counts[LabelIndex(l)]++;
  return counts;
}

std::vector<size_t> DuplicateIndices(const std::vector<Label> &y,
                                     uint64_t seed) {
  auto members = ByClass(y);
  size_t target = 0;
  for (const auto &m : members) target = std::max(target, m.size());
  std::vector<size_t> extra;
  for (int c = 0; c < kNumLabels; ++c) {
    Rng rng(DeriveSeed(seed, c));
    for (size_t i = members[c].size(); i < target; ++i) {
      extra.push_back(members[c][rng.Below(members[c].size())]);
    }
  }
  return extra;
}

BalancedSet BalanceDataset(const std::vector<Vector> &x,
                           const std::vector<Label> &y, Mode mode,
                           uint64_t seed, int k) {
  if (x.size() != y.size()) {
    Fail(ErrorCode::kInvalidArgument, "feature and label counts differ");
  }
  BalancedSet out;
  out.x = x;
  out.y = y;
  out.synthetic.assign(x.size(), false);
  out.source.assign(x.size(), -1);

  if (mode == Mode::kDuplicate) {
    for (size_t i : DuplicateIndices(y, seed)) {
      out.x.push_back(x[i]);
      out.y.push_back(y[i]);
      out.synthetic.push_back(true);
      out.source.push_back(static_cast<int64_t>(i));
    }
    return out;
  }

  auto members = ByClass(y);
  size_t target = 0;
  for (const auto &m : members) target = std::max(target, m.size());
  for (int c = 0; c < kNumLabels; ++c) {
    if (members[c].size() == target) continue;
    std::vector<Vector> minority;
    for (size_t i : members[c]) minority.push_back(x[i]);
    int kc = std::min<int>(k, static_cast<int>(minority.size()) - 1);
    auto synth = Smote(minority, target, std::max(kc, 1), DeriveSeed(seed, c));
    for (auto &v : synth) {
      out.x.push_back(std::move(v));
      out.y.push_back(LabelFromIndex(c));
      out.synthetic.push_back(true);
      out.source.push_back(-1);
    }
  }
  return out;
}

}  // namespace amhs::balance
