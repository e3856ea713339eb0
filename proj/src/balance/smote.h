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

// Class balancing for the training split. SMOTE interpolates dense feature
// vectors; duplicate mode resamples existing rows and works for anything
// indexable, including token sequences.

#ifndef AMHS_BALANCE_SMOTE_H_
#define AMHS_BALANCE_SMOTE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "common/label.h"
#include "common/rng.h"

namespace amhs::balance {

using Vector = std::vector<double>;

// Supplies the interpolation factor for each synthetic point. The default
// draws Uniform[0, 1) from the seeded generator.
using LambdaSource = std::function<double(Rng &)>;

// Indices of the k nearest points to points[i], excluding i itself, by
// Euclidean distance; ties go to the lower index.
std::vector<size_t> NearestNeighbors(const std::vector<Vector> &points,
                                     size_t i, size_t k);

// Returns target_count - |minority| synthetic vectors. Base points cycle
// round-robin in index order; the partner is drawn uniformly from the base
// point's k nearest neighbours.
std::vector<Vector> Smote(const std::vector<Vector> &minority,
                          size_t target_count, int k, uint64_t seed,
                          const LambdaSource &lambda = nullptr);

enum class Mode { kSmote, kDuplicate };

const char *ModeName(Mode mode);
Mode ParseMode(const std::string &name);

using ClassCounts = std::array<size_t, kNumLabels>;

ClassCounts CountLabels(const std::vector<Label> &labels);

struct BalancedSet {
  std::vector<Vector> x;
  std::vector<Label> y;
  // False for the originals, which come first and in input order.
  std::vector<bool> synthetic;
  // Index of the copied example for duplicates, -1 otherwise.
  std::vector<int64_t> source;
};

// Raises every class to the majority count. For SMOTE, k is clamped to
// |class| - 1 for small classes. Every label must have at least one
// example, and two for SMOTE when the class needs topping up.
BalancedSet BalanceDataset(const std::vector<Vector> &x,
                           const std::vector<Label> &y, Mode mode,
                           uint64_t seed, int k = 5);

// Duplicate mode on labels alone: indices of the examples to append, in
// class order.
std::vector<size_t> DuplicateIndices(const std::vector<Label> &y,
                                     uint64_t seed);

}  // namespace amhs::balance

#endif  // AMHS_BALANCE_SMOTE_H_
