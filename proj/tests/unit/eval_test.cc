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

#include <algorithm>
#include <set>

#include "common/error.h"
#include "common/rng.h"
#include "eval/report.h"
#include "eval/split.h"
#include "support/oracles.h"

namespace amhs::eval {
namespace {

std::vector<Label> Balanced(size_t per_class) {
  std::vector<Label> y;
  for (size_t i = 0; i < per_class; ++i) {
    for (Label l : kAllLabels) y.push_back(l);
  }
  return y;
}

void CheckPartition(const SplitIndices &s, size_t n) {
  std::vector<size_t> all;
  for (const auto *part : {&s.train, &s.val, &s.test}) {
    all.insert(all.end(), part->begin(), part->end());
  }
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() == n);
  for (size_t i = 0; i < n; ++i) CHECK(all[i] == i);
}

TEST_CASE("split examples") {
  auto y = Balanced(25);
  auto all_train = StratifiedSplit(y, {1.0, 0.0, 0.0}, 1);
  CHECK(all_train.train.size() == 100);
  CHECK(all_train.val.empty());
  CHECK(all_train.test.empty());

  // 25 per class: floor(2.5) = 2 each to val and test, 21 to train.
  auto s = StratifiedSplit(y, {0.8, 0.1, 0.1}, 1);
  CHECK(s.train.size() == 84);
  CHECK(s.val.size() == 8);
  CHECK(s.test.size() == 8);
  CheckPartition(s, 100);
  for (const auto *part : {&s.val, &s.test}) {
    std::vector<Label> labels;
    for (size_t i : *part) labels.push_back(y[i]);
    for (Label l : kAllLabels) {
      CHECK(std::count(labels.begin(), labels.end(), l) == 2);
    }
  }
  auto again = StratifiedSplit(y, {0.8, 0.1, 0.1}, 1);
  CHECK(again.train == s.train);
  CHECK(again.Fingerprint() == s.Fingerprint());
  auto other = StratifiedSplit(y, {0.8, 0.1, 0.1}, 2);
  CHECK(other.Fingerprint() != s.Fingerprint());

  auto y40 = Balanced(10);
  auto s40 = StratifiedSplit(y40, {0.8, 0.1, 0.1}, 1);
  CHECK(s40.train.size() == 32);
  CHECK(s40.val.size() == 4);
}

TEST_CASE("split errors") {
  std::vector<Label> y = Balanced(20);
  for (int i = 0; i < 5; ++i) y.push_back(Label::kGender);
  y.erase(std::remove(y.begin(), y.end(), Label::kReligious), y.end());
  y.push_back(Label::kReligious);
  y.push_back(Label::kReligious);
  CHECK_THROWS_WITH_AS(StratifiedSplit(y, {0.8, 0.1, 0.1}, 1),
                       doctest::Contains("religious"), Error);
  CHECK_THROWS_AS(StratifiedSplit(y, {0.8, 0.3, 0.1}, 1), Error);
  CHECK_THROWS_AS(StratifiedSplit(y, {1.1, -0.1, 0.0}, 1), Error);
}

TEST_CASE("split partitions random label sets") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Label> y;
    size_t n = 40 + rng.Below(200);
    for (size_t i = 0; i < n; ++i) {
      y.push_back(LabelFromIndex(static_cast<int>(rng.Below(4))));
    }
    auto s = StratifiedSplit(y, {0.7, 0.15, 0.15}, trial);
    CheckPartition(s, n);
  }
}

TEST_CASE("metrics hand checks") {
  auto gold = Balanced(5);
  auto perfect = ComputeMetrics(gold, gold);
  CHECK(perfect.macro_f1 == 1.0);
  CHECK(perfect.accuracy == 1.0);
  for (int g = 0; g < 4; ++g) {
    for (int p = 0; p < 4; ++p) CHECK(perfect.confusion[g][p] == (g == p ? 5u : 0u));
  }
  std::vector<Label> one(gold.size(), Label::kGender);
  auto m = ComputeMetrics(gold, one);
  CHECK(m.f1[LabelIndex(Label::kGender)] == 0.4);
  CHECK(m.f1[0] == 0.0);
  CHECK(m.macro_f1 == 0.1);
  CHECK(m.precision[0] == 0.0);
  CHECK_THROWS_AS(ComputeMetrics(gold, {Label::kRacial}), Error);
  auto empty = ComputeMetrics({}, {});
  CHECK(empty.total == 0);
  CHECK(empty.macro_f1 == 0.0);
}

TEST_CASE("metrics agree with a naive recount") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng.Below(300);
    std::vector<Label> gold, pred;
    std::vector<int> gi, pi;
    for (size_t i = 0; i < n; ++i) {
      gi.push_back(static_cast<int>(rng.Below(4)));
      pi.push_back(rng.Below(3) ? gi.back() : static_cast<int>(rng.Below(4)));
      gold.push_back(LabelFromIndex(gi.back()));
      pred.push_back(LabelFromIndex(pi.back()));
    }
    auto m = ComputeMetrics(gold, pred);
    auto o = testing::NaiveRecount(gi, pi);
    for (int c = 0; c < 4; ++c) {
      CHECK(std::fabs(m.precision[c] - o.precision[c]) <= 1e-12);
      CHECK(std::fabs(m.recall[c] - o.recall[c]) <= 1e-12);
      CHECK(std::fabs(m.f1[c] - o.f1[c]) <= 1e-12);
      size_t row = 0;
      for (int p = 0; p < 4; ++p) {
        CHECK(m.confusion[c][p] == static_cast<size_t>(o.confusion[c][p]));
        row += m.confusion[c][p];
      }
      CHECK(row == static_cast<size_t>(std::count(gi.begin(), gi.end(), c)));
    }
    CHECK(std::fabs(m.macro_f1 - o.macro_f1) <= 1e-12);
    CHECK(std::fabs(m.accuracy - o.accuracy) <= 1e-12);

    // Relabel consistently: macro-F1 is unchanged.
    std::array<int, 4> perm = {2, 0, 3, 1};
    std::vector<Label> pg, pp;
    for (size_t i = 0; i < n; ++i) {
      pg.push_back(LabelFromIndex(perm[gi[i]]));
      pp.push_back(LabelFromIndex(perm[pi[i]]));
    }
    CHECK(std::fabs(ComputeMetrics(pg, pp).macro_f1 - m.macro_f1) <= 1e-12);
  }
}

TEST_CASE("comparison report") {
  std::vector<textnorm::CleanDocument> docs;
  std::vector<Label> gold;
  const char *texts[] = {"ዘረኛ ነው", "መናፍቅ", "ሴቶች", "ሰላም"};
  for (int i = 0; i < 4; ++i) {
    docs.push_back(textnorm::DefaultNormalizer().Clean("d", texts[i]));
    gold.push_back(LabelFromIndex(i));
  }
  models::RuleModel rules;
  rules.Add("ዘረኛ", Label::kRacial, 1);
  rules.Add("መናፍቅ", Label::kReligious, 1);
  auto a = models::Classifier::FromRule(rules, "h1");
  auto b = models::Classifier::FromRule(rules, "h1");
  auto c = Compare({{"a", &a}, {"b", &b}}, docs, gold, "fp", 7);
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[0].metrics.macro_f1 == c.rows[1].metrics.macro_f1);
  CHECK(c.rows[0].metrics.confusion == c.rows[1].metrics.confusion);
  auto text = ToText(c);
  auto json = ToJson(c).dump();
  for (const char *v : {"94.8", "80.3", "40.1", "published, not reproduced"}) {
    CHECK(text.find(v) != std::string::npos);
    CHECK(json.find(v) != std::string::npos);
  }
  CHECK(ToText(c) == text);
  CHECK(text.find(" \n") == std::string::npos);
  auto single = ToText(c.rows[0]);
  CHECK(single.find("published, not reproduced") != std::string::npos);

  auto other = models::Classifier::FromRule(rules, "h2");
  CHECK_THROWS_AS(Compare({{"a", &a}, {"x", &other}}, docs, gold, "fp", 7),
                  Error);
}

}  // namespace
}  // namespace amhs::eval
