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

#include "annotation/service.h"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/hash.h"
#include "common/log.h"
#include "ingest/raw_post.h"

namespace amhs::annotation {

using nlohmann::ordered_json;

AnnotatorRegistry AnnotatorRegistry::FromJson(const std::string &text) {
  AnnotatorRegistry reg;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kParse, std::string("annotators file: ") + e.what());
  }
  if (!j.is_array()) Fail(ErrorCode::kParse, "annotators file must be an array");
  static const std::set<std::string> kKeys = {
      "id", "display_name", "demographics", "active", "role", "token"};
  for (const auto &e : j) {
    if (!e.is_object()) Fail(ErrorCode::kParse, "annotator entry not an object");
    for (const auto &[k, v] : e.items()) {
      if (!kKeys.count(k)) Fail(ErrorCode::kParse, "unknown annotator field " + k);
    }
    Annotator a;
    try {
      a.id = e.at("id").get<std::string>();
      a.display_name = e.value("display_name", a.id);
      if (e.contains("demographics") && !e["demographics"].is_null()) {
        a.demographics = e["demographics"].get<std::string>();
      }
      a.active = e.value("active", true);
      std::string role = e.value("role", "annotator");
      if (role == "admin") {
        a.role = Role::kAdmin;
      } else if (role != "annotator") {
        Fail(ErrorCode::kParse, "unknown role '" + role + "'");
      }
      a.token = e.at("token").get<std::string>();
    } catch (const nlohmann::json::exception &ex) {
      Fail(ErrorCode::kParse, std::string("annotator entry: ") + ex.what());
    }
    reg.Add(std::move(a));
  }
  return reg;
}

AnnotatorRegistry AnnotatorRegistry::FromFile(const std::string &path) {
  return FromJson(ReadFile(path));
}

void AnnotatorRegistry::Add(Annotator a) {
  if (a.id.empty() || a.token.empty()) {
    Fail(ErrorCode::kInvalidArgument, "annotator needs an id and a token");
  }
  if (by_id_.count(a.id)) {
    Fail(ErrorCode::kConflict, "duplicate annotator id " + a.id);
  }
  if (id_by_token_.count(a.token)) {
    Fail(ErrorCode::kConflict, "annotator token reused by " + a.id);
  }
  id_by_token_[a.token] = a.id;
  std::string id = a.id;
  by_id_.emplace(std::move(id), std::move(a));
}

const Annotator *AnnotatorRegistry::Find(const std::string &id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &it->second;
}

const Annotator *AnnotatorRegistry::FindByToken(const std::string &token) const {
  auto it = id_by_token_.find(token);
  return it == id_by_token_.end() ? nullptr : Find(it->second);
}

double FleissKappa(const std::vector<std::array<int, kNumLabels>> &table) {
  if (table.size() < 2) {
    Fail(ErrorCode::kInvalidArgument, "kappa undefined: need >= 2 items");
  }
  int raters = 0;
  for (int v : table[0]) raters += v;
  if (raters < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "kappa undefined: need >= 2 ratings per item");
  }
  const double n = static_cast<double>(table.size());
  const double r = raters;
  std::array<double, kNumLabels> share{};
  double p_bar = 0.0;
  for (const auto &row : table) {
    int sum = 0;
    double agree = 0.0;
    for (int c = 0; c < kNumLabels; ++c) {
      sum += row[c];
      agree += static_cast<double>(row[c]) * (row[c] - 1);
      share[c] += row[c];
    }
    if (sum != raters) {
      Fail(ErrorCode::kInvalidArgument, "unequal ratings per item");
    }
    p_bar += agree / (r * (r - 1.0));
  }
  p_bar /= n;
  double p_e = 0.0;
  for (double s : share) {
    double p = s / (n * r);
    p_e += p * p;
  }
  if (p_e >= 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

namespace {

struct ParsedItem {
  std::string id;
  std::string raw;
  std::string norm;
  std::vector<std::string> tokens;
  std::optional<Label> gold;
};

[[noreturn]] void LineError(size_t line_no, const std::string &why) {
  Fail(ErrorCode::kSchema, "line " + std::to_string(line_no) + ": " + why);
}

ParsedItem ParseGoldLine(const nlohmann::json &j, size_t line_no) {
  static const std::set<std::string> kKeys = {"id", "text", "tokens", "label"};
  for (const auto &[k, v] : j.items()) {
    if (!kKeys.count(k)) LineError(line_no, "unexpected field \"" + k + "\"");
  }
  for (const auto &k : kKeys) {
    if (!j.contains(k)) LineError(line_no, "missing field \"" + k + "\"");
  }
  if (!j["id"].is_string() || j["id"].get<std::string>().empty()) {
    LineError(line_no, "\"id\" must be a non-empty string");
  }
  if (!j["text"].is_string()) LineError(line_no, "\"text\" must be a string");
  if (!j["tokens"].is_array()) LineError(line_no, "\"tokens\" must be an array");
  ParsedItem item;
  for (const auto &t : j["tokens"]) {
    if (!t.is_string() || t.get<std::string>().empty()) {
      LineError(line_no, "\"tokens\" must hold non-empty strings");
    }
    item.tokens.push_back(t.get<std::string>());
  }
  if (!j["label"].is_string()) LineError(line_no, "\"label\" must be a string");
  item.gold = ParseLabel(j["label"].get<std::string>());
  if (!item.gold) {
    LineError(line_no, "unknown label \"" + j["label"].get<std::string>() + "\"");
  }
  item.id = j["id"].get<std::string>();
  item.raw = j["text"].get<std::string>();
  for (size_t i = 0; i < item.tokens.size(); ++i) {
    if (i) item.norm += ' ';
    item.norm += item.tokens[i];
  }
  return item;
}

std::vector<ParsedItem> ParseImport(const std::string &content,
                                    const textnorm::Normalizer &norm) {
  std::vector<ParsedItem> items;
  std::set<std::string> seen;
  size_t line_no = 0, start = 0;
  while (start < content.size()) {
    size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      LineError(line_no, "not a JSON object");
    }
    ParsedItem item;
    if (j.contains("label")) {
      item = ParseGoldLine(j, line_no);
    } else {
      std::string why;
      auto post = ingest::ParseRawPost(line, &why, true);
      if (!post) LineError(line_no, why);
      auto doc = norm.Clean(post->id, post->text);
      item.id = doc.id;
      item.raw = doc.raw_text;
      item.norm = doc.norm_text;
      item.tokens = doc.tokens;
    }
    if (!seen.insert(item.id).second) {
      LineError(line_no, "duplicate id \"" + item.id + "\"");
    }
    items.push_back(std::move(item));
  }
  if (items.empty()) Fail(ErrorCode::kSchema, "no records");
  return items;
}

// Strict majority over non-skipped votes once enough are in.
void Resolve(Task &task, const std::vector<Vote> &votes) {
  std::array<int, kNumLabels> counts{};
  int n = 0;
  for (const auto &v : votes) {
    if (v.skipped || !v.label) continue;
    counts[LabelIndex(*v.label)]++;
    ++n;
  }
  if (n < task.required_votes) return;
  for (int c = 0; c < kNumLabels; ++c) {
    if (2 * counts[c] > n) {
      task.status = TaskStatus::kComplete;
      task.gold = LabelFromIndex(c);
      return;
    }
  }
  task.status = TaskStatus::kAdjudication;
}

}  // namespace

AnnotationService::AnnotationService(std::unique_ptr<Store> store,
                                     AnnotatorRegistry annotators,
                                     ServiceOptions options)
    : store_(std::move(store)),
      annotators_(std::move(annotators)),
      options_(std::move(options)) {
  if (!store_) Fail(ErrorCode::kInvalidArgument, "annotation store missing");
  if (options_.lease_timeout.count() <= 0) {
    Fail(ErrorCode::kConfig, "lease timeout must be positive");
  }
}

UtcTime AnnotationService::Now() const {
  if (options_.clock) return options_.clock();
  return std::chrono::floor<std::chrono::seconds>(
      std::chrono::system_clock::now());
}

const Annotator &AnnotationService::RequireActive(
    const std::string &annotator_id) const {
  const Annotator *a = annotators_.Find(annotator_id);
  if (!a) Fail(ErrorCode::kUnauthorized, "unknown annotator " + annotator_id);
  if (!a->active) Fail(ErrorCode::kForbidden, "annotator " + annotator_id + " is inactive");
  return *a;
}

Dataset AnnotationService::RequireDataset(const std::string &dataset_id) {
  auto d = store_->GetDataset(dataset_id);
  if (!d) Fail(ErrorCode::kNotFound, "no dataset " + dataset_id);
  return *d;
}

ImportResult AnnotationService::ImportDataset(const std::string &content,
                                              const std::string &name,
                                              int required_votes) {
  if (required_votes < 1) {
    Fail(ErrorCode::kInvalidArgument, "required_votes must be positive");
  }
  const auto &norm =
      options_.normalizer ? *options_.normalizer : textnorm::DefaultNormalizer();
  auto items = ParseImport(content, norm);
  std::string hash = Sha256Hex(content);
  std::lock_guard<std::mutex> lock(mu_);
  if (store_->FindDatasetByHash(hash)) {
    Fail(ErrorCode::kConflict, "dataset already imported");
  }
  Dataset d;
  d.content_hash = hash;
  d.id = "ds-" + hash.substr(0, 12);
  d.name = name;
  d.required_votes = required_votes;
  d.num_items = items.size();
  UtcTime now = Now();
  store_->Transaction([&] {
    store_->InsertDataset(d);
    for (auto &item : items) {
      Task t;
      t.dataset_id = d.id;
      t.item_id = item.id;
      t.raw_text = std::move(item.raw);
      t.norm_text = std::move(item.norm);
      t.tokens = std::move(item.tokens);
      t.required_votes = required_votes;
      if (item.gold) {
        t.status = TaskStatus::kComplete;
        t.gold = item.gold;
        t.adjudicated_by = "import";
        t.adjudicated_at = now;
      }
      store_->InsertTask(t);
    }
  });
  Log().info("imported dataset {} with {} items", d.id, d.num_items);
  return {d.id, d.num_items};
}

std::vector<Dataset> AnnotationService::ListDatasets() {
  std::lock_guard<std::mutex> lock(mu_);
  return store_->ListDatasets();
}

std::optional<Assignment> AnnotationService::NextTask(
    const std::string &annotator_id, const std::string &dataset_id) {
  RequireActive(annotator_id);
  std::lock_guard<std::mutex> lock(mu_);
  const UtcTime now = Now();

  // An unexpired lease on a still-open task is handed back as is.
  for (const auto &l : store_->LeasesForAnnotator(annotator_id)) {
    if (l.expires_at <= now) continue;
    if (!dataset_id.empty() && l.dataset_id != dataset_id) continue;
    auto t = store_->GetTask(l.dataset_id, l.item_id);
    if (!t || t->status != TaskStatus::kOpen) continue;
    bool voted = false;
    for (const auto &v : store_->VotesForItem(l.dataset_id, l.item_id)) {
      voted = voted || v.annotator_id == annotator_id;
    }
    if (!voted) return Assignment{*t, l.expires_at};
  }

  std::vector<Dataset> datasets;
  if (dataset_id.empty()) {
    datasets = store_->ListDatasets();
  } else {
    datasets.push_back(RequireDataset(dataset_id));
  }
  for (const auto &d : datasets) {
    for (const auto &t : store_->ListTasks(d.id)) {
      if (t.status != TaskStatus::kOpen) continue;
      auto votes = store_->VotesForItem(d.id, t.item_id);
      std::set<std::string> voters;
      int counted = 0;
      for (const auto &v : votes) {
        voters.insert(v.annotator_id);
        if (!v.skipped) ++counted;
      }
      if (voters.count(annotator_id)) continue;
      int held = 0;
      for (const auto &l : store_->LeasesForItem(d.id, t.item_id)) {
        if (l.expires_at > now && !voters.count(l.annotator_id)) ++held;
      }
      if (counted + held >= t.required_votes) continue;
      Lease lease{d.id, t.item_id, annotator_id, now + options_.lease_timeout};
      store_->Transaction([&] { store_->PutLease(lease); });
      return Assignment{t, lease.expires_at};
    }
  }
  return std::nullopt;
}

VoteResult AnnotationService::ResultFor(const std::string &dataset_id,
                                        const std::string &item_id) {
  auto t = store_->GetTask(dataset_id, item_id);
  VoteResult r;
  r.status = t->status;
  r.gold = t->gold;
  return r;
}

VoteResult AnnotationService::SubmitVote(const VoteRequest &req) {
  RequireActive(req.annotator_id);
  if (req.skipped && req.label) {
    Fail(ErrorCode::kInvalidArgument, "a skipped vote carries no label");
  }
  if (!req.skipped && !req.label) {
    Fail(ErrorCode::kInvalidArgument, "vote needs a label or skipped=true");
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (!req.client_token.empty()) {
    if (auto prior = store_->FindVoteByToken(req.client_token)) {
      if (prior->annotator_id != req.annotator_id ||
          prior->dataset_id != req.dataset_id ||
          prior->item_id != req.item_id || prior->label != req.label ||
          prior->skipped != req.skipped) {
        Fail(ErrorCode::kConflict, "client token already used for another vote");
      }
      VoteResult r = ResultFor(req.dataset_id, req.item_id);
      r.replayed = true;
      return r;
    }
  }
  auto task = store_->GetTask(req.dataset_id, req.item_id);
  if (!task) {
    Fail(ErrorCode::kNotFound,
         "no item " + req.item_id + " in dataset " + req.dataset_id);
  }
  if (task->status != TaskStatus::kOpen) {
    Fail(ErrorCode::kConflict, "task " + req.item_id + " is " +
                                   TaskStatusName(task->status));
  }
  auto votes = store_->VotesForItem(req.dataset_id, req.item_id);
  for (const auto &v : votes) {
    if (v.annotator_id == req.annotator_id) {
      Fail(ErrorCode::kConflict, "annotator " + req.annotator_id +
                                     " already voted on " + req.item_id);
    }
  }
  bool held = false;
  for (const auto &l : store_->LeasesForItem(req.dataset_id, req.item_id)) {
    held = held || l.annotator_id == req.annotator_id;
  }
  if (!held) {
    Fail(ErrorCode::kConflict, "annotator " + req.annotator_id +
                                   " was never assigned " + req.item_id);
  }
  Vote vote;
  vote.dataset_id = req.dataset_id;
  vote.item_id = req.item_id;
  vote.annotator_id = req.annotator_id;
  vote.label = req.label;
  vote.skipped = req.skipped;
  vote.submitted_at = Now();
  vote.client_token = req.client_token;
  votes.push_back(vote);
  Resolve(*task, votes);
  store_->Transaction([&] {
    store_->InsertVote(vote);
    store_->UpdateTask(*task);
  });
  return VoteResult{task->status, task->gold, false};
}

VoteResult AnnotationService::Adjudicate(const std::string &dataset_id,
                                         const std::string &item_id,
                                         Label label,
                                         const std::string &adjudicator_id) {
  const Annotator &a = RequireActive(adjudicator_id);
  if (a.role != Role::kAdmin) {
    Fail(ErrorCode::kForbidden, "adjudication requires the admin role");
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto task = store_->GetTask(dataset_id, item_id);
  if (!task) {
    Fail(ErrorCode::kNotFound, "no item " + item_id + " in dataset " + dataset_id);
  }
  if (task->status != TaskStatus::kAdjudication) {
    Fail(ErrorCode::kConflict, "task " + item_id + " is " +
                                   TaskStatusName(task->status) +
                                   ", not awaiting adjudication");
  }
  task->status = TaskStatus::kComplete;
  task->gold = label;
  task->adjudicated_by = adjudicator_id;
  task->adjudicated_at = Now();
  store_->Transaction([&] { store_->UpdateTask(*task); });
  return VoteResult{task->status, task->gold, false};
}

AgreementReport AnnotationService::Agreement(const std::string &dataset_id) {
  std::lock_guard<std::mutex> lock(mu_);
  Dataset d = RequireDataset(dataset_id);
  std::map<std::string, std::array<int, kNumLabels>> per_item;
  for (const auto &t : store_->ListTasks(dataset_id)) per_item[t.item_id] = {};
  AgreementReport r;
  r.ratings_per_item = d.required_votes;
  for (const auto &v : store_->VotesForDataset(dataset_id)) {
    if (v.skipped || !v.label) continue;
    per_item[v.item_id][LabelIndex(*v.label)]++;
    r.label_votes[LabelIndex(*v.label)]++;
  }
  std::vector<std::array<int, kNumLabels>> table;
  for (const auto &[item, counts] : per_item) {
    int n = counts[0] + counts[1] + counts[2] + counts[3];
    if (n == 0) {
      ++r.unannotated_items;
    } else if (n != d.required_votes) {
      r.excluded_items.push_back(item);
    } else {
      table.push_back(counts);
    }
  }
  r.items_included = table.size();
  if (table.size() < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "kappa undefined: need >= 2 items with " +
             std::to_string(d.required_votes) + " votes each, have " +
             std::to_string(table.size()));
  }
  r.kappa = FleissKappa(table);
  return r;
}

std::string AnnotationService::ExportGold(const std::string &dataset_id) {
  std::lock_guard<std::mutex> lock(mu_);
  RequireDataset(dataset_id);
  std::string out;
  for (const auto &t : store_->ListTasks(dataset_id)) {
    if (t.status != TaskStatus::kComplete || !t.gold) continue;
    ordered_json j;
    j["id"] = t.item_id;
    j["text"] = t.raw_text;
    j["tokens"] = t.tokens;
    j["label"] = std::string(LabelName(*t.gold));
    out += j.dump() + "\n";
  }
  return out;
}

DatasetStats AnnotationService::Stats(const std::string &dataset_id) {
  std::lock_guard<std::mutex> lock(mu_);
  DatasetStats s;
  s.dataset = RequireDataset(dataset_id);
  for (const auto &t : store_->ListTasks(dataset_id)) {
    switch (t.status) {
      case TaskStatus::kOpen:
        ++s.open;
        break;
      case TaskStatus::kComplete:
        ++s.complete;
        break;
      case TaskStatus::kAdjudication:
        ++s.adjudication;
        break;
    }
    if (t.gold) s.gold_counts[LabelIndex(*t.gold)]++;
  }
  for (const auto &v : store_->VotesForDataset(dataset_id)) {
    if (v.skipped) {
      ++s.skipped;
    } else {
      ++s.votes;
      s.vote_counts[LabelIndex(*v.label)]++;
    }
  }
  return s;
}

std::optional<Task> AnnotationService::GetTask(const std::string &dataset_id,
                                               const std::string &item_id) {
  std::lock_guard<std::mutex> lock(mu_);
  return store_->GetTask(dataset_id, item_id);
}

std::vector<Vote> AnnotationService::Votes(const std::string &dataset_id) {
  std::lock_guard<std::mutex> lock(mu_);
  return store_->VotesForDataset(dataset_id);
}

}  // namespace amhs::annotation
