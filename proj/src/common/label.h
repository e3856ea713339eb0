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

#ifndef AMHS_COMMON_LABEL_H_
#define AMHS_COMMON_LABEL_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace amhs {

// The four-way taxonomy. The numeric values are the fixed class order used
// by every model, matrix and report.
enum class Label : int {
  kRacial = 0,
  kReligious = 1,
  kGender = 2,
  kNonhate = 3,
};

inline constexpr int kNumLabels = 4;

inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kRacial, Label::kReligious, Label::kGender, Label::kNonhate};

inline constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "racial", "religious", "gender", "nonhate"};

inline int LabelIndex(Label label) { return static_cast<int>(label); }

inline Label LabelFromIndex(int index) { return static_cast<Label>(index); }

inline std::string_view LabelName(Label label) {
  return kLabelNames[LabelIndex(label)];
}

inline std::optional<Label> ParseLabel(std::string_view name) {
  for (int i = 0; i < kNumLabels; ++i) {
    if (kLabelNames[i] == name) return LabelFromIndex(i);
  }
  return std::nullopt;
}

}  // namespace amhs

#endif  // AMHS_COMMON_LABEL_H_
