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

#include <sqlite3.h>

#include <json.hpp>

#include "annotation/store.h"
#include "common/error.h"

namespace amhs::annotation {
namespace {

constexpr const char *kSchema = R"sql(
CREATE TABLE IF NOT EXISTS datasets (
  id TEXT PRIMARY KEY,
  content_hash TEXT NOT NULL UNIQUE,
  name TEXT NOT NULL,
  required_votes INTEGER NOT NULL,
  num_items INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS tasks (
  dataset_id TEXT NOT NULL,
  item_id TEXT NOT NULL,
  raw_text TEXT NOT NULL,
  norm_text TEXT NOT NULL,
  tokens TEXT NOT NULL,
  required_votes INTEGER NOT NULL,
  status TEXT NOT NULL,
  gold TEXT,
  adjudicated_by TEXT,
  adjudicated_at INTEGER,
  PRIMARY KEY (dataset_id, item_id));
CREATE TABLE IF NOT EXISTS votes (
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  dataset_id TEXT NOT NULL,
  item_id TEXT NOT NULL,
  annotator_id TEXT NOT NULL,
  label TEXT,
  skipped INTEGER NOT NULL,
  submitted_at INTEGER NOT NULL,
  client_token TEXT NOT NULL,
  UNIQUE (dataset_id, item_id, annotator_id));
CREATE UNIQUE INDEX IF NOT EXISTS votes_token ON votes (client_token)
  WHERE client_token <> '';
CREATE TABLE IF NOT EXISTS leases (
  dataset_id TEXT NOT NULL,
  item_id TEXT NOT NULL,
  annotator_id TEXT NOT NULL,
  expires_at INTEGER NOT NULL,
  PRIMARY KEY (dataset_id, item_id, annotator_id));
CREATE INDEX IF NOT EXISTS leases_annotator ON leases (annotator_id);
)sql";

int64_t ToSeconds(UtcTime t) { return t.time_since_epoch().count(); }
UtcTime FromSeconds(int64_t s) { return UtcTime(std::chrono::seconds(s)); }

class Statement {
 public:
  Statement(sqlite3 *db, const char *sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      Fail(ErrorCode::kInternal, std::string("sqlite prepare: ") +
                                     sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement &) = delete;
  Statement &operator=(const Statement &) = delete;

  Statement &Bind(int i, const std::string &v) {
    sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()),
                      SQLITE_TRANSIENT);
    return *this;
  }
  Statement &Bind(int i, int64_t v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  Statement &BindNull(int i) {
    sqlite3_bind_null(stmt_, i);
    return *this;
  }
  template <typename T>
  Statement &Bind(int i, const std::optional<T> &v) {
    if (v) return Bind(i, *v);
    return BindNull(i);
  }

  // True while rows remain.
  bool Step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    if (rc == SQLITE_CONSTRAINT) {
      Fail(ErrorCode::kConflict, std::string("constraint violated: ") +
                                     sqlite3_errmsg(db_));
    }
    Fail(ErrorCode::kInternal, std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }
  void Run() { Step(); }

  std::string Text(int col) const {
    auto *p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char *>(p),
                           sqlite3_column_bytes(stmt_, col))
             : std::string();
  }
  std::optional<std::string> OptText(int col) const {
    if (sqlite3_column_type(stmt_, col) == SQLITE_NULL) return std::nullopt;
    return Text(col);
  }
  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool IsNull(int col) const {
    return sqlite3_column_type(stmt_, col) == SQLITE_NULL;
  }

 private:
  sqlite3 *db_;
  sqlite3_stmt *stmt_ = nullptr;
};

std::optional<Label> LabelColumn(const Statement &s, int col) {
  auto t = s.OptText(col);
  if (!t) return std::nullopt;
  return ParseLabel(*t);
}

std::optional<std::string> LabelText(const std::optional<Label> &l) {
  if (!l) return std::nullopt;
  return std::string(LabelName(*l));
}

TaskStatus ParseStatus(const std::string &s) {
  if (s == "complete") return TaskStatus::kComplete;
  if (s == "adjudication") return TaskStatus::kAdjudication;
  return TaskStatus::kOpen;
}

class SqliteStore : public Store {
 public:
  explicit SqliteStore(const std::string &path) {
    if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      Fail(ErrorCode::kIo, "cannot open annotation store " + path + ": " + msg);
    }
    Exec("PRAGMA foreign_keys = ON;");
    Exec(kSchema);
  }
  ~SqliteStore() override { sqlite3_close(db_); }

  void Transaction(const std::function<void()> &fn) override {
    Exec("BEGIN IMMEDIATE;");
    try {
      fn();
    } catch (...) {
      Exec("ROLLBACK;");
      throw;
    }
    Exec("COMMIT;");
  }

  std::optional<Dataset> FindDatasetByHash(const std::string &hash) override {
    Statement s(db_,
                "SELECT id, content_hash, name, required_votes, num_items "
                "FROM datasets WHERE content_hash = ?");
    s.Bind(1, hash);
    if (!s.Step()) return std::nullopt;
    return ReadDataset(s);
  }

  std::optional<Dataset> GetDataset(const std::string &id) override {
    Statement s(db_,
                "SELECT id, content_hash, name, required_votes, num_items "
                "FROM datasets WHERE id = ?");
    s.Bind(1, id);
    if (!s.Step()) return std::nullopt;
    return ReadDataset(s);
  }

  std::vector<Dataset> ListDatasets() override {
    Statement s(db_,
                "SELECT id, content_hash, name, required_votes, num_items "
                "FROM datasets ORDER BY id");
    std::vector<Dataset> out;
    while (s.Step()) out.push_back(ReadDataset(s));
    return out;
  }

  void InsertDataset(const Dataset &d) override {
    Statement s(db_,
                "INSERT INTO datasets (id, content_hash, name, required_votes, "
                "num_items) VALUES (?, ?, ?, ?, ?)");
    s.Bind(1, d.id).Bind(2, d.content_hash).Bind(3, d.name);
    s.Bind(4, int64_t{d.required_votes}).Bind(5, static_cast<int64_t>(d.num_items));
    s.Run();
  }

  void InsertTask(const Task &t) override {
    Statement s(db_,
                "INSERT INTO tasks (dataset_id, item_id, raw_text, norm_text, "
                "tokens, required_votes, status, gold, adjudicated_by, "
                "adjudicated_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
    BindTask(s, t);
    s.Run();
  }

  void UpdateTask(const Task &t) override {
    Statement s(db_,
                "UPDATE tasks SET raw_text = ?3, norm_text = ?4, tokens = ?5, "
                "required_votes = ?6, status = ?7, gold = ?8, "
                "adjudicated_by = ?9, adjudicated_at = ?10 "
                "WHERE dataset_id = ?1 AND item_id = ?2");
    BindTask(s, t);
    s.Run();
  }

  std::optional<Task> GetTask(const std::string &dataset_id,
                              const std::string &item_id) override {
    Statement s(db_, (std::string(kTaskSelect) +
                      " WHERE dataset_id = ? AND item_id = ?")
                         .c_str());
    s.Bind(1, dataset_id).Bind(2, item_id);
    if (!s.Step()) return std::nullopt;
    return ReadTask(s);
  }

  std::vector<Task> ListTasks(const std::string &dataset_id) override {
    Statement s(db_, (std::string(kTaskSelect) +
                      " WHERE dataset_id = ? ORDER BY item_id")
                         .c_str());
    s.Bind(1, dataset_id);
    std::vector<Task> out;
    while (s.Step()) out.push_back(ReadTask(s));
    return out;
  }

  void InsertVote(const Vote &v) override {
    Statement s(db_,
                "INSERT INTO votes (dataset_id, item_id, annotator_id, label, "
                "skipped, submitted_at, client_token) "
                "VALUES (?, ?, ?, ?, ?, ?, ?)");
    s.Bind(1, v.dataset_id).Bind(2, v.item_id).Bind(3, v.annotator_id);
    s.Bind(4, LabelText(v.label)).Bind(5, int64_t{v.skipped ? 1 : 0});
    s.Bind(6, ToSeconds(v.submitted_at)).Bind(7, v.client_token);
    s.Run();
  }

  std::vector<Vote> VotesForItem(const std::string &dataset_id,
                                 const std::string &item_id) override {
    Statement s(db_, (std::string(kVoteSelect) +
                      " WHERE dataset_id = ? AND item_id = ? ORDER BY seq")
                         .c_str());
    s.Bind(1, dataset_id).Bind(2, item_id);
    std::vector<Vote> out;
    while (s.Step()) out.push_back(ReadVote(s));
    return out;
  }

  std::vector<Vote> VotesForDataset(const std::string &dataset_id) override {
    Statement s(db_, (std::string(kVoteSelect) +
                      " WHERE dataset_id = ? ORDER BY item_id, seq")
                         .c_str());
    s.Bind(1, dataset_id);
    std::vector<Vote> out;
    while (s.Step()) out.push_back(ReadVote(s));
    return out;
  }

  std::optional<Vote> FindVoteByToken(const std::string &token) override {
    Statement s(db_,
                (std::string(kVoteSelect) + " WHERE client_token = ?").c_str());
    s.Bind(1, token);
    if (!s.Step()) return std::nullopt;
    return ReadVote(s);
  }

  void PutLease(const Lease &l) override {
    Statement s(db_,
                "INSERT OR REPLACE INTO leases (dataset_id, item_id, "
                "annotator_id, expires_at) VALUES (?, ?, ?, ?)");
    s.Bind(1, l.dataset_id).Bind(2, l.item_id).Bind(3, l.annotator_id);
    s.Bind(4, ToSeconds(l.expires_at));
    s.Run();
  }

  std::vector<Lease> LeasesForItem(const std::string &dataset_id,
                                   const std::string &item_id) override {
    Statement s(db_,
                "SELECT dataset_id, item_id, annotator_id, expires_at FROM "
                "leases WHERE dataset_id = ? AND item_id = ? "
                "ORDER BY annotator_id");
    s.Bind(1, dataset_id).Bind(2, item_id);
    return ReadLeases(s);
  }

  std::vector<Lease> LeasesForAnnotator(const std::string &annotator_id) override {
    Statement s(db_,
                "SELECT dataset_id, item_id, annotator_id, expires_at FROM "
                "leases WHERE annotator_id = ? ORDER BY dataset_id, item_id");
    s.Bind(1, annotator_id);
    return ReadLeases(s);
  }

 private:
  static constexpr const char *kTaskSelect =
      "SELECT dataset_id, item_id, raw_text, norm_text, tokens, "
      "required_votes, status, gold, adjudicated_by, adjudicated_at FROM tasks";
  static constexpr const char *kVoteSelect =
      "SELECT dataset_id, item_id, annotator_id, label, skipped, "
      "submitted_at, client_token FROM votes";

  void Exec(const char *sql) {
    char *err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown error";
      sqlite3_free(err);
      Fail(ErrorCode::kInternal, "sqlite: " + msg);
    }
  }

  static Dataset ReadDataset(const Statement &s) {
    Dataset d;
    d.id = s.Text(0);
    d.content_hash = s.Text(1);
    d.name = s.Text(2);
    d.required_votes = static_cast<int>(s.Int(3));
    d.num_items = static_cast<size_t>(s.Int(4));
    return d;
  }

  static void BindTask(Statement &s, const Task &t) {
    s.Bind(1, t.dataset_id).Bind(2, t.item_id).Bind(3, t.raw_text);
    s.Bind(4, t.norm_text).Bind(5, nlohmann::json(t.tokens).dump());
    s.Bind(6, int64_t{t.required_votes});
    s.Bind(7, std::string(TaskStatusName(t.status)));
    s.Bind(8, LabelText(t.gold)).Bind(9, t.adjudicated_by);
    if (t.adjudicated_at) {
      s.Bind(10, ToSeconds(*t.adjudicated_at));
    } else {
      s.BindNull(10);
    }
  }

  static Task ReadTask(const Statement &s) {
    Task t;
    t.dataset_id = s.Text(0);
    t.item_id = s.Text(1);
    t.raw_text = s.Text(2);
    t.norm_text = s.Text(3);
    t.tokens = nlohmann::json::parse(s.Text(4)).get<std::vector<std::string>>();
    t.required_votes = static_cast<int>(s.Int(5));
    t.status = ParseStatus(s.Text(6));
    t.gold = LabelColumn(s, 7);
    t.adjudicated_by = s.OptText(8);
    if (!s.IsNull(9)) t.adjudicated_at = FromSeconds(s.Int(9));
    return t;
  }

  static Vote ReadVote(const Statement &s) {
    Vote v;
    v.dataset_id = s.Text(0);
    v.item_id = s.Text(1);
    v.annotator_id = s.Text(2);
    v.label = LabelColumn(s, 3);
    v.skipped = s.Int(4) != 0;
    v.submitted_at = FromSeconds(s.Int(5));
    v.client_token = s.Text(6);
    return v;
  }

  static std::vector<Lease> ReadLeases(Statement &s) {
    std::vector<Lease> out;
    while (s.Step()) {
      out.push_back(Lease{s.Text(0), s.Text(1), s.Text(2), FromSeconds(s.Int(3))});
    }
    return out;
  }

  sqlite3 *db_ = nullptr;
};

}  // namespace

std::unique_ptr<Store> OpenSqliteStore(const std::string &path) {
  return std::make_unique<SqliteStore>(path);
}

}  // namespace amhs::annotation
