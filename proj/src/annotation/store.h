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

// Persistence behind the annotation service. The service serializes all
// mutations and wraps each in Transaction(), so implementations only need
// the transaction to be all-or-nothing.

#ifndef AMHS_ANNOTATION_STORE_H_
#define AMHS_ANNOTATION_STORE_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "annotation/types.h"

namespace amhs::annotation {

class Store {
 public:
  virtual ~Store() = default;

  virtual void Transaction(const std::function<void()> &fn) = 0;

  virtual std::optional<Dataset> FindDatasetByHash(
      const std::string &content_hash) = 0;
  virtual std::optional<Dataset> GetDataset(const std::string &id) = 0;
  // Ordered by id.
  virtual std::vector<Dataset> ListDatasets() = 0;
  virtual void InsertDataset(const Dataset &dataset) = 0;

  virtual void InsertTask(const Task &task) = 0;
  virtual void UpdateTask(const Task &task) = 0;
  virtual std::optional<Task> GetTask(const std::string &dataset_id,
                                      const std::string &item_id) = 0;
  // Ordered by item_id.
  virtual std::vector<Task> ListTasks(const std::string &dataset_id) = 0;

  virtual void InsertVote(const Vote &vote) = 0;
  // Ordered by submission, then annotator id.
  virtual std::vector<Vote> VotesForItem(const std::string &dataset_id,
                                         const std::string &item_id) = 0;
  virtual std::vector<Vote> VotesForDataset(const std::string &dataset_id) = 0;
  virtual std::optional<Vote> FindVoteByToken(const std::string &token) = 0;

  // Inserts or replaces the (dataset, item, annotator) lease.
  virtual void PutLease(const Lease &lease) = 0;
  virtual std::vector<Lease> LeasesForItem(const std::string &dataset_id,
                                           const std::string &item_id) = 0;
  virtual std::vector<Lease> LeasesForAnnotator(
      const std::string &annotator_id) = 0;
};

class MemoryStore : public Store {
 public:
  // Runs fn directly; the service validates before it writes.
  void Transaction(const std::function<void()> &fn) override { fn(); }

  std::optional<Dataset> FindDatasetByHash(const std::string &hash) override;
  std::optional<Dataset> GetDataset(const std::string &id) override;
  std::vector<Dataset> ListDatasets() override;
  void InsertDataset(const Dataset &dataset) override;

  void InsertTask(const Task &task) override;
  void UpdateTask(const Task &task) override;
  std::optional<Task> GetTask(const std::string &dataset_id,
                              const std::string &item_id) override;
  std::vector<Task> ListTasks(const std::string &dataset_id) override;

  void InsertVote(const Vote &vote) override;
  std::vector<Vote> VotesForItem(const std::string &dataset_id,
                                 const std::string &item_id) override;
  std::vector<Vote> VotesForDataset(const std::string &dataset_id) override;
  std::optional<Vote> FindVoteByToken(const std::string &token) override;

  void PutLease(const Lease &lease) override;
  std::vector<Lease> LeasesForItem(const std::string &dataset_id,
                                   const std::string &item_id) override;
  std::vector<Lease> LeasesForAnnotator(const std::string &annotator_id) override;

 private:
  using ItemKey = std::pair<std::string, std::string>;
  std::map<std::string, Dataset> datasets_;
  std::map<ItemKey, Task> tasks_;
  std::map<ItemKey, std::vector<Vote>> votes_;
  std::map<std::string, Vote> votes_by_token_;
  std::map<ItemKey, std::map<std::string, Lease>> leases_;
};

// SQLite-backed store; `path` may be ":memory:".
std::unique_ptr<Store> OpenSqliteStore(const std::string &path);

}  // namespace amhs::annotation

#endif  // AMHS_ANNOTATION_STORE_H_
