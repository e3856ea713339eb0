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

#ifndef AMHS_ANNOTATION_TYPES_H_
#define AMHS_ANNOTATION_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common/label.h"
#include "common/timeutil.h"

namespace amhs::annotation {

enum class Role { kAnnotator, kAdmin };

const char *RoleName(Role role);

struct Annotator {
  std::string id;
  std::string display_name;
  // Free text only, never parsed.
  std::optional<std::string> demographics;
  bool active = true;
  Role role = Role::kAnnotator;
  // Bearer token for the HTTP API.
  std::string token;
};

enum class TaskStatus { kOpen, kComplete, kAdjudication };

const char *TaskStatusName(TaskStatus status);

struct Dataset {
  std::string id;
  std::string content_hash;
  std::string name;
  int required_votes = 3;
  size_t num_items = 0;
};

struct Task {
  std::string dataset_id;
  std::string item_id;
  std::string raw_text;
  std::string norm_text;
  std::vector<std::string> tokens;
  int required_votes = 3;
  TaskStatus status = TaskStatus::kOpen;
  std::optional<Label> gold;
  // Set when an admin resolved the task; "import" for gold-file imports.
  std::optional<std::string> adjudicated_by;
  std::optional<UtcTime> adjudicated_at;
};

struct Vote {
  std::string dataset_id;
  std::string item_id;
  std::string annotator_id;
  std::optional<Label> label;  // absent when skipped
  bool skipped = false;
  UtcTime submitted_at{};
  // Client-chosen idempotency key; empty when not supplied.
  std::string client_token;
};

struct Lease {
  std::string dataset_id;
  std::string item_id;
  std::string annotator_id;
  UtcTime expires_at{};
};

}  // namespace amhs::annotation

#endif  // AMHS_ANNOTATION_TYPES_H_
