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

#include <doctest.h>

#include "balance/smote.h"
#include "common/error.h"
#include "support/oracles.h"

namespace amhs::balance {
namespace {

bool OnSomeNeighborSegment(const std::vector<Vector> &minority, size_t k,
                           const Vector &s) {
  for (size_t i = 0; i < minority.size(); ++i) {
    for (size_t j : testing::BruteForceKnn(minority, i, k)) {
      if (testing::OnSegment(minority[i], minority[j], s)) return true;
    }
  }
  return false;
}

TEST_CASE("smote pinned lambda") {
  std::vector<Vector> minority = {{0, 0}, {2, 2}};
  auto out = Smote(minority, 3, 1, 7, [](Rng &) { return 0.5; });
  REQUIRE(out.size() == 1);
  CHECK(out[0] == Vector{1, 1});
  CHECK(Smote(minority, 2, 1, 7).empty());
}

TEST_CASE("smote errors") {
  CHECK_THROWS_WITH_AS(Smote({{1.0}}, 3, 1, 0), doctest::Contains("cannot interpolate"),
                       Error);
  CHECK_THROWS_AS(Smote({{0.0}, {1.0}}, 3, 2, 0), Error);
  CHECK_THROWS_AS(Smote({{0.0}, {1.0}}, 3, 0, 0), Error);
  CHECK_THROWS_AS(Smote({{0.0}, {1.0}, {2.0}}, 2, 1, 0), Error);
}

TEST_CASE("smote segments match the exhaustive neighbour oracle") {
  Rng gen(2024);
  for (int trial = 0; trial < 25; ++trial) {
    size_t n = 2 + gen.Below(60);
    size_t dim = 1 + gen.Below(10);
    std::vector<Vector> minority(n, Vector(dim));
    for (auto &p : minority) {
      for (auto &v : p) v = gen.Below(4) == 0 ? 0.0 : gen.Uniform(-3, 3);
    }
    int k = 1 + static_cast<int>(gen.Below(std::min<size_t>(n - 1, 6)));
    size_t target = n + gen.Below(140);
    auto before = minority;
    auto synth = Smote(minority, target, k, trial);
    CHECK(synth.size() == target - n);
    CHECK(minority == before);
    for (const auto &s : synth) {
      CHECK(OnSomeNeighborSegment(minority, k, s));
    }
    CHECK(Smote(minority, target, k, trial) == synth);
  }
}

TEST_CASE("nearest neighbours agree with brute force including ties") {
  std::vector<Vector> pts = {{0}, {1}, {-1}, {1}, {2}, {0}};
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t k = 1; k < pts.size(); ++k) {
      CHECK(NearestNeighbors(pts, i, k) == testing::BruteForceKnn(pts, i, k));
    }
  }
}

TEST_CASE("balance dataset duplicate mode") {
  std::vector<Vector> x;
  std::vector<Label> y;
  auto add = [&](double v, Label l) {
    x.push_back({v});
    y.push_back(l);
  };
  for (int i = 0; i < 4; ++i) add(i, Label::kRacial);
  add(10, Label::kReligious);
  add(11, Label::kReligious);
  for (int i = 0; i < 4; ++i) add(20 + i, Label::kGender);
  for (int i = 0; i < 4; ++i) add(30 + i, Label::kNonhate);
  auto out = BalanceDataset(x, y, Mode::kDuplicate, 3);
  auto counts = CountLabels(out.y);
  CHECK(counts == ClassCounts{4, 4, 4, 4});
  for (size_t i = 0; i < x.size(); ++i) {
    CHECK(out.x[i] == x[i]);
    CHECK_FALSE(out.synthetic[i]);
  }
  for (size_t i = x.size(); i < out.x.size(); ++i) {
    CHECK(out.synthetic[i]);
    CHECK(out.y[i] == Label::kReligious);
    CHECK(out.x[i] == x[out.source[i]]);
  }
}

TEST_CASE("balance dataset smote mode") {
  Rng gen(11);
  std::vector<Vector> x;
  std::vector<Label> y;
  size_t sizes[] = {10, 4, 6, 10};
  for (int c = 0; c < 4; ++c) {
    for (size_t i = 0; i < sizes[c]; ++i) {
      x.push_back({gen.Uniform(), gen.Uniform(), gen.Uniform()});
      y.push_back(LabelFromIndex(c));
    }
  }
  auto out = BalanceDataset(x, y, Mode::kSmote, 5, 3);
  CHECK(CountLabels(out.y) == ClassCounts{10, 10, 10, 10});
  for (size_t i = x.size(); i < out.x.size(); ++i) {
    std::vector<Vector> minority;
    for (size_t j = 0; j < x.size(); ++j) {
      if (y[j] == out.y[i]) minority.push_back(x[j]);
    }
    CHECK(OnSomeNeighborSegment(minority, 3, out.x[i]));
  }
  auto again = BalanceDataset(x, y, Mode::kSmote, 5, 3);
  CHECK(again.x == out.x);

  std::vector<Vector> bx = {{0}, {1}, {2}, {3}};
  std::vector<Label> by = {Label::kRacial, Label::kReligious, Label::kGender,
                           Label::kNonhate};
  auto fixed = BalanceDataset(bx, by, Mode::kSmote, 1);
  CHECK(fixed.x == bx);
  CHECK(fixed.y == by);

  by.back() = Label::kGender;
  CHECK_THROWS_AS(BalanceDataset(bx, by, Mode::kDuplicate, 1), Error);
}

}  // namespace
}  // namespace amhs::balance
