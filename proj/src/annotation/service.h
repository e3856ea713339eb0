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

// Team annotation backend: dataset import, leased task assignment with
// redundancy, votes, majority resolution, adjudication, agreement and gold
// export. All operations take one service-wide lock, so each call is atomic
// with respect to every other.

#ifndef AMHS_ANNOTATION_SERVICE_H_
#define AMHS_ANNOTATION_SERVICE_H_

#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "annotation/store.h"
#include "textnorm/normalizer.h"

namespace amhs::annotation {

class AnnotatorRegistry {
 public:
  // JSON array of {"id", "display_name", "demographics"?, "active"?,
  // "role"?, "token"}.
  static AnnotatorRegistry FromJson(const std::string &text);
  static AnnotatorRegistry FromFile(const std::string &path);

  void Add(Annotator annotator);
  const Annotator *Find(const std::string &id) const;
  const Annotator *FindByToken(const std::string &token) const;
  size_t size() const { return by_id_.size(); }

 private:
  std::map<std::string, Annotator> by_id_;
  std::map<std::string, std::string> id_by_token_;
};

// Fleiss' kappa over an items x categories count table with the same
// number of ratings per row. Needs >= 2 items and >= 2 ratings per item.
// When every rating falls in one category the expected agreement is 1 and
// kappa is reported as 1.
double FleissKappa(const std::vector<std::array<int, kNumLabels>> &table);

struct ServiceOptions {
  std::chrono::seconds lease_timeout{30 * 60};
  // Defaults to the system clock.
  std::function<UtcTime()> clock;
  const textnorm::Normalizer *normalizer = nullptr;
};

struct ImportResult {
  std::string dataset_id;
  size_t num_tasks = 0;
};

struct Assignment {
  Task task;
  UtcTime lease_expires_at{};
};

struct VoteRequest {
  std::string dataset_id;
  std::string item_id;
  std::string annotator_id;
  std::optional<Label> label;
  bool skipped = false;
  std::string client_token;
};

struct VoteResult {
  TaskStatus status = TaskStatus::kOpen;
  std::optional<Label> gold;
  // True when client_token matched an already stored vote.
  bool replayed = false;
};

struct AgreementReport {
  double kappa = 0.0;
  int ratings_per_item = 0;
  size_t items_included = 0;
  // Items with some votes but not exactly ratings_per_item of them.
  std::vector<std::string> excluded_items;
  size_t unannotated_items = 0;
  std::array<size_t, kNumLabels> label_votes{};
};

struct DatasetStats {
  Dataset dataset;
  size_t open = 0, complete = 0, adjudication = 0;
  size_t votes = 0, skipped = 0;
  std::array<size_t, kNumLabels> gold_counts{};
  std::array<size_t, kNumLabels> vote_counts{};
};

class AnnotationService {
 public:
  AnnotationService(std::unique_ptr<Store> store, AnnotatorRegistry annotators,
                    ServiceOptions options = {});

  const AnnotatorRegistry &annotators() const { return annotators_; }
  UtcTime Now() const;

  // `content` is a newline-delimited file of pool records or of exported
  // gold records. Gold records become complete tasks. Errors name the
  // offending line.
  ImportResult ImportDataset(const std::string &content,
                             const std::string &name = "",
                             int required_votes = 3);

  std::vector<Dataset> ListDatasets();

  // Empty when nothing is eligible. `dataset_id` restricts the search.
  std::optional<Assignment> NextTask(const std::string &annotator_id,
                                     const std::string &dataset_id = "");

  VoteResult SubmitVote(const VoteRequest &request);

  VoteResult Adjudicate(const std::string &dataset_id,
                        const std::string &item_id, Label label,
                        const std::string &adjudicator_id);

  AgreementReport Agreement(const std::string &dataset_id);

  // Complete tasks as {"id","text","tokens","label"} lines ordered by id.
  std::string ExportGold(const std::string &dataset_id);

  DatasetStats Stats(const std::string &dataset_id);

  std::optional<Task> GetTask(const std::string &dataset_id,
                              const std::string &item_id);
  std::vector<Vote> Votes(const std::string &dataset_id);

 private:
  const Annotator &RequireActive(const std::string &annotator_id) const;
  Dataset RequireDataset(const std::string &dataset_id);
  VoteResult ResultFor(const std::string &dataset_id,
                       const std::string &item_id);

  std::mutex mu_;
  std::unique_ptr<Store> store_;
  AnnotatorRegistry annotators_;
  ServiceOptions options_;
};

}  // namespace amhs::annotation

#endif  // AMHS_ANNOTATION_SERVICE_H_
