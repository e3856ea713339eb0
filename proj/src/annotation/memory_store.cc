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

#include <algorithm>

#include "annotation/store.h"
#include "common/error.h"

namespace amhs::annotation {

const char *RoleName(Role role) {
  return role == Role::kAdmin ? "admin" : "annotator";
}

const char *TaskStatusName(TaskStatus status) {
  switch (status) {
    case TaskStatus::kOpen:
      return "open";
    case TaskStatus::kComplete:
      return "complete";
    case TaskStatus::kAdjudication:
      return "adjudication";
  }
  return "open";
}

std::optional<Dataset> MemoryStore::FindDatasetByHash(const std::string &hash) {
  for (const auto &[id, d] : datasets_) {
    if (d.content_hash == hash) return d;
  }
  return std::nullopt;
}

std::optional<Dataset> MemoryStore::GetDataset(const std::string &id) {
  auto it = datasets_.find(id);
  if (it == datasets_.end()) return std::nullopt;
  return it->second;
}

std::vector<Dataset> MemoryStore::ListDatasets() {
  std::vector<Dataset> out;
  for (const auto &[id, d] : datasets_) out.push_back(d);
  return out;
}

void MemoryStore::InsertDataset(const Dataset &dataset) {
  if (!datasets_.emplace(dataset.id, dataset).second) {
    Fail(ErrorCode::kConflict, "dataset already imported");
  }
}

void MemoryStore::InsertTask(const Task &task) {
  if (!tasks_.emplace(ItemKey{task.dataset_id, task.item_id}, task).second) {
    Fail(ErrorCode::kConflict, "duplicate item " + task.item_id);
  }
}

void MemoryStore::UpdateTask(const Task &task) {
  tasks_.at(ItemKey{task.dataset_id, task.item_id}) = task;
}

std::optional<Task> MemoryStore::GetTask(const std::string &dataset_id,
                                         const std::string &item_id) {
  auto it = tasks_.find(ItemKey{dataset_id, item_id});
  if (it == tasks_.end()) return std::nullopt;
  return it->second;
}

std::vector<Task> MemoryStore::ListTasks(const std::string &dataset_id) {
  std::vector<Task> out;
  for (auto it = tasks_.lower_bound(ItemKey{dataset_id, ""});
       it != tasks_.end() && it->first.first == dataset_id; ++it) {
    out.push_back(it->second);
  }
  return out;
}

void MemoryStore::InsertVote(const Vote &vote) {
  auto &list = votes_[ItemKey{vote.dataset_id, vote.item_id}];
  for (const auto &v : list) {
    if (v.annotator_id == vote.annotator_id) {
      Fail(ErrorCode::kConflict, "duplicate vote");
    }
  }
  if (!vote.client_token.empty()) {
    if (!votes_by_token_.emplace(vote.client_token, vote).second) {
      Fail(ErrorCode::kConflict, "client token reused");
    }
  }
  list.push_back(vote);
}

std::vector<Vote> MemoryStore::VotesForItem(const std::string &dataset_id,
                                            const std::string &item_id) {
  auto it = votes_.find(ItemKey{dataset_id, item_id});
  if (it == votes_.end()) return {};
  return it->second;
}

std::vector<Vote> MemoryStore::VotesForDataset(const std::string &dataset_id) {
  std::vector<Vote> out;
  for (auto it = votes_.lower_bound(ItemKey{dataset_id, ""});
       it != votes_.end() && it->first.first == dataset_id; ++it) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::optional<Vote> MemoryStore::FindVoteByToken(const std::string &token) {
  auto it = votes_by_token_.find(token);
  if (it == votes_by_token_.end()) return std::nullopt;
  return it->second;
}

void MemoryStore::PutLease(const Lease &lease) {
  leases_[ItemKey{lease.dataset_id, lease.item_id}][lease.annotator_id] = lease;
}

std::vector<Lease> MemoryStore::LeasesForItem(const std::string &dataset_id,
                                              const std::string &item_id) {
  std::vector<Lease> out;
  auto it = leases_.find(ItemKey{dataset_id, item_id});
  if (it == leases_.end()) return out;
  for (const auto &[a, l] : it->second) out.push_back(l);
  return out;
}

std::vector<Lease> MemoryStore::LeasesForAnnotator(
    const std::string &annotator_id) {
  std::vector<Lease> out;
  for (const auto &[key, by_annotator] : leases_) {
    auto it = by_annotator.find(annotator_id);
    if (it != by_annotator.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace amhs::annotation
