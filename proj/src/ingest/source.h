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

// Source adapters and the fetch stream built on top of them.
//
// An adapter serves pages of posts addressed by an opaque cursor. Live
// platform clients implement the same contract as FileAdapter: a cursor
// returned by FetchPage() can be passed back later to resume, and the
// adapter declares the minimum spacing between page requests so that the
// stream can respect platform rate limits.

#ifndef AMHS_INGEST_SOURCE_H_
#define AMHS_INGEST_SOURCE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "common/timeutil.h"
#include "ingest/raw_post.h"

namespace amhs::ingest {

struct SourceQuery {
  std::vector<std::string> keywords;
  UtcDate date_from{};
  UtcDate date_to{};
  size_t max_items = 1;

  // Throws Error(kInvalidArgument).
  void Validate(bool keyword_driven) const;

  // Inclusive on both calendar days.
  bool Contains(UtcTime t) const {
    return t >= date_from && t < date_to + std::chrono::days{1};
  }
};

struct Page {
  std::vector<RawPost> posts;
  // Records the adapter could not turn into posts, with reasons.
  std::vector<std::string> malformed;
  // Absent when the source is exhausted.
  std::optional<std::string> next_cursor;
};

class SourceAdapter {
 public:
  virtual ~SourceAdapter() = default;

  virtual std::string name() const = 0;

  // Keyword-driven sources (search APIs) require non-empty query keywords.
  virtual bool keyword_driven() const { return false; }

  virtual std::chrono::milliseconds min_page_interval() const {
    return std::chrono::milliseconds{0};
  }

  // Empty cursor starts from the beginning. Throws RetriableError when the
  // source cannot be reached; the same cursor may be retried.
  virtual Page FetchPage(const SourceQuery &query,
                         const std::string &cursor) = 0;
};

// Reads newline-delimited JSON records. The cursor is the index of the next
// line to read.
class FileAdapter : public SourceAdapter {
 public:
  explicit FileAdapter(std::string path, size_t page_size = 256);

  std::string name() const override { return "file:" + path_; }
  Page FetchPage(const SourceQuery &query, const std::string &cursor) override;

 private:
  void Load();

  std::string path_;
  size_t page_size_;
  bool loaded_ = false;
  std::vector<std::string> lines_;
};

// Adapters by name.
class AdapterRegistry {
 public:
  void Register(std::string name, std::shared_ptr<SourceAdapter> adapter);
  // Throws Error(kNotFound) for unregistered names.
  std::shared_ptr<SourceAdapter> Get(const std::string &name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::shared_ptr<SourceAdapter>> adapters_;
};

struct FetchStats {
  size_t yielded = 0;
  size_t malformed_skipped = 0;
  size_t out_of_window = 0;
  size_t pages = 0;
  size_t retries = 0;
};

struct FetchOptions {
  // Attempts per page before a RetriableError is surfaced to the caller.
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{200};
  // Injected in tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
  // Resume point from a previous stream's cursor().
  std::string start_cursor;
};

// Lazily pulls pages and yields in-window posts in source order, stopping
// after query.max_items.
class PostStream {
 public:
  PostStream(std::shared_ptr<SourceAdapter> adapter, SourceQuery query,
             FetchOptions options);

  std::optional<RawPost> Next();

  // Cursor of the first page not yet fully consumed.
  const std::string &cursor() const { return page_cursor_; }
  const FetchStats &stats() const { return stats_; }

 private:
  bool FillBuffer();

  std::shared_ptr<SourceAdapter> adapter_;
  SourceQuery query_;
  FetchOptions options_;
  FetchStats stats_;
  std::string page_cursor_;
  std::optional<std::string> next_cursor_;
  bool exhausted_ = false;
  bool first_page_ = true;
  std::vector<RawPost> buffer_;
  size_t buffer_pos_ = 0;
  std::chrono::steady_clock::time_point last_request_{};
};

PostStream Fetch(std::shared_ptr<SourceAdapter> adapter,
                 const SourceQuery &query, FetchOptions options = {});

// Drains a stream into a vector.
std::vector<RawPost> Drain(PostStream &stream);

// Runs one worker thread per adapter and returns each stream's posts in
// adapter order.
std::vector<std::vector<RawPost>> FetchConcurrently(
    const std::vector<std::shared_ptr<SourceAdapter>> &adapters,
    const SourceQuery &query, std::vector<FetchStats> *stats = nullptr,
    const FetchOptions &options = {});

}  // namespace amhs::ingest

#endif  // AMHS_INGEST_SOURCE_H_
