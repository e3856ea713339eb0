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

#include "ingest/source.h"

#include <charconv>
#include <exception>
#include <thread>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/log.h"

namespace amhs::ingest {

void SourceQuery::Validate(bool keyword_driven) const {
  if (date_from > date_to) {
    Fail(ErrorCode::kInvalidArgument, "query date_from is after date_to");
  }
  if (max_items == 0) {
    Fail(ErrorCode::kInvalidArgument, "query max_items must be positive");
  }
  if (keyword_driven && keywords.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "keyword-driven source needs a non-empty keyword list");
  }
}

FileAdapter::FileAdapter(std::string path, size_t page_size)
    : path_(std::move(path)), page_size_(page_size == 0 ? 1 : page_size) {}

void FileAdapter::Load() {
  if (loaded_) return;
  try {
    lines_ = ReadLines(path_);
  } catch (const Error &) {
    throw RetriableError("file source unavailable: " + path_);
  }
  loaded_ = true;
}

Page FileAdapter::FetchPage(const SourceQuery &, const std::string &cursor) {
  Load();
  size_t start = 0;
  if (!cursor.empty()) {
    auto [ptr, ec] =
        std::from_chars(cursor.data(), cursor.data() + cursor.size(), start);
    if (ec != std::errc() || ptr != cursor.data() + cursor.size() ||
        start > lines_.size()) {
      Fail(ErrorCode::kInvalidArgument, "bad file cursor \"" + cursor + "\"");
    }
  }
  Page page;
  size_t end = std::min(lines_.size(), start + page_size_);
  for (size_t i = start; i < end; ++i) {
    if (lines_[i].empty()) continue;
    std::string why;
    auto post = ParseRawPost(lines_[i], &why);
    if (post) {
      page.posts.push_back(std::move(*post));
    } else {
      page.malformed.push_back(path_ + ":" + std::to_string(i + 1) + ": " +
                               why);
    }
  }
  if (end < lines_.size()) page.next_cursor = std::to_string(end);
  return page;
}

void AdapterRegistry::Register(std::string name,
                               std::shared_ptr<SourceAdapter> adapter) {
  adapters_[std::move(name)] = std::move(adapter);
}

std::shared_ptr<SourceAdapter> AdapterRegistry::Get(
    const std::string &name) const {
  auto it = adapters_.find(name);
  if (it == adapters_.end()) {
    Fail(ErrorCode::kNotFound, "no adapter registered as \"" + name + "\"");
  }
  return it->second;
}

std::vector<std::string> AdapterRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &[name, adapter] : adapters_) out.push_back(name);
  return out;
}

PostStream::PostStream(std::shared_ptr<SourceAdapter> adapter,
                       SourceQuery query, FetchOptions options)
    : adapter_(std::move(adapter)),
      query_(std::move(query)),
      options_(std::move(options)),
      page_cursor_(options_.start_cursor) {
  query_.Validate(adapter_->keyword_driven());
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

bool PostStream::FillBuffer() {
  while (!exhausted_) {
    if (!first_page_) {
      if (!next_cursor_) {
        exhausted_ = true;
        return false;
      }
      page_cursor_ = *next_cursor_;
    }
    auto interval = adapter_->min_page_interval();
    if (!first_page_ && interval.count() > 0) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - last_request_);
      if (elapsed < interval) options_.sleep(interval - elapsed);
    }
    Page page;
    for (int attempt = 1;; ++attempt) {
      try {
        last_request_ = std::chrono::steady_clock::now();
        page = adapter_->FetchPage(query_, page_cursor_);
        break;
      } catch (const RetriableError &) {
        if (attempt >= options_.max_attempts) throw;
        ++stats_.retries;
        options_.sleep(options_.retry_backoff * attempt);
      }
    }
    first_page_ = false;
    ++stats_.pages;
    for (const auto &why : page.malformed) {
      ++stats_.malformed_skipped;
      Log().warn("skipping malformed record: {}", why);
    }
    next_cursor_ = page.next_cursor;
    buffer_.clear();
    buffer_pos_ = 0;
    for (auto &post : page.posts) {
      if (query_.Contains(post.created_at)) {
        buffer_.push_back(std::move(post));
      } else {
        ++stats_.out_of_window;
      }
    }
    if (!buffer_.empty()) return true;
  }
  return false;
}

std::optional<RawPost> PostStream::Next() {
  if (stats_.yielded >= query_.max_items) return std::nullopt;
  if (buffer_pos_ >= buffer_.size() && !FillBuffer()) return std::nullopt;
  ++stats_.yielded;
  return std::move(buffer_[buffer_pos_++]);
}

PostStream Fetch(std::shared_ptr<SourceAdapter> adapter,
                 const SourceQuery &query, FetchOptions options) {
  return PostStream(std::move(adapter), query, std::move(options));
}

std::vector<RawPost> Drain(PostStream &stream) {
  std::vector<RawPost> out;
  while (auto post = stream.Next()) out.push_back(std::move(*post));
  return out;
}

std::vector<std::vector<RawPost>> FetchConcurrently(
    const std::vector<std::shared_ptr<SourceAdapter>> &adapters,
    const SourceQuery &query, std::vector<FetchStats> *stats,
    const FetchOptions &options) {
  size_t n = adapters.size();
  std::vector<std::vector<RawPost>> results(n);
  std::vector<FetchStats> local_stats(n);
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> workers;
    workers.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      workers.emplace_back([&, i] {
        try {
          PostStream stream(adapters[i], query, options);
          results[i] = Drain(stream);
          local_stats[i] = stream.stats();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (stats) *stats = std::move(local_stats);
  return results;
}

}  // namespace amhs::ingest
