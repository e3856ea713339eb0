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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "common/error.h"
#include "common/hash.h"
#include "common/rng.h"
#include "ingest/filters.h"
#include "ingest/source.h"
#include "support/fixtures.h"

namespace amhs::ingest {
namespace {

using testing::FixturePath;

SourceQuery WideQuery(size_t max_items = 1000) {
  SourceQuery q;
  q.date_from = *ParseDate("2014-08-01");
  q.date_to = *ParseDate("2022-06-30");
  q.max_items = max_items;
  return q;
}

std::vector<std::string> Ids(const std::vector<RawPost> &posts) {
  std::vector<std::string> ids;
  for (const auto &p : posts) ids.push_back(p.id);
  return ids;
}

RawPost MakePost(std::string id, std::string text, const char *ts) {
  RawPost p;
  p.id = std::move(id);
  p.text = std::move(text);
  p.author_hash = HashAuthor("file", p.id);
  p.created_at = *ParseRfc3339(ts);
  return p;
}

TEST_CASE("rfc3339 parsing normalizes to UTC") {
  auto t = ParseRfc3339("2019-03-02T09:30:00+03:00");
  REQUIRE(t);
  CHECK(FormatRfc3339(*t) == "2019-03-02T06:30:00Z");
  CHECK(FormatRfc3339(*ParseRfc3339("2019-12-31T23:59:59.999-01:00")) ==
        "2020-01-01T00:59:59Z");
  CHECK_FALSE(ParseRfc3339("2019-02-30T00:00:00Z"));
  CHECK_FALSE(ParseRfc3339("2019-03-02 09:30"));
  CHECK_FALSE(ParseRfc3339("2019-03-02T09:30:00"));
}

TEST_CASE("fetch over the 3-record fixture") {
  auto adapter = std::make_shared<FileAdapter>(FixturePath("posts_3.jsonl"));
  auto stream = Fetch(adapter, WideQuery());
  auto posts = Drain(stream);
  CHECK(Ids(posts) == std::vector<std::string>{"p001", "p002", "p003"});
  CHECK(FormatRfc3339(posts[1].created_at) == "2019-03-02T06:30:00Z");
  CHECK(posts[2].source == Source::kYoutube);

  SourceQuery empty_window;
  empty_window.date_from = *ParseDate("2010-01-01");
  empty_window.date_to = *ParseDate("2010-12-31");
  empty_window.max_items = 10;
  auto none = Fetch(adapter, empty_window);
  CHECK(Drain(none).empty());
  CHECK(none.stats().out_of_window == 3);
}

TEST_CASE("fetch respects max_items in file order") {
  auto adapter =
      std::make_shared<FileAdapter>(FixturePath("posts_10.jsonl"), 3);
  auto stream = Fetch(adapter, WideQuery(4));
  CHECK(Ids(Drain(stream)) ==
        std::vector<std::string>{"p001", "p002", "p003", "p004"});
}

TEST_CASE("fetch is deterministic and resumable from a page cursor") {
  auto adapter =
      std::make_shared<FileAdapter>(FixturePath("posts_10.jsonl"), 4);
  auto a = Fetch(adapter, WideQuery());
  auto b = Fetch(adapter, WideQuery());
  auto first = Drain(a);
  auto second = Drain(b);
  REQUIRE(first.size() == 10);
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(SerializeRawPost(first[i], false) ==
          SerializeRawPost(second[i], false));
  }
  CHECK(a.stats().pages == 3);

  auto partial = Fetch(adapter, WideQuery(6));
  Drain(partial);
  FetchOptions resume;
  resume.start_cursor = partial.cursor();
  CHECK(resume.start_cursor == "4");
  auto rest = Fetch(adapter, WideQuery(), resume);
  CHECK(Ids(Drain(rest)).front() == "p005");
}

TEST_CASE("malformed records are skipped and counted") {
  auto adapter =
      std::make_shared<FileAdapter>(FixturePath("posts_malformed.jsonl"));
  auto stream = Fetch(adapter, WideQuery());
  CHECK(Ids(Drain(stream)) == std::vector<std::string>{"p001", "p005"});
  CHECK(stream.stats().malformed_skipped == 4);
}

class FlakyAdapter : public SourceAdapter {
 public:
  explicit FlakyAdapter(int failures) : failures_(failures) {}
  std::string name() const override { return "flaky"; }
  std::chrono::milliseconds min_page_interval() const override {
    return std::chrono::milliseconds{50};
  }
  Page FetchPage(const SourceQuery &, const std::string &cursor) override {
    if (failures_-- > 0) throw RetriableError("down");
    Page page;
    int index = cursor.empty() ? 0 : std::stoi(cursor);
    page.posts.push_back(MakePost("f" + std::to_string(index), "ሰላም",
                                  "2020-01-01T00:00:00Z"));
    if (index < 2) page.next_cursor = std::to_string(index + 1);
    return page;
  }

 private:
  int failures_;
};

TEST_CASE("unavailable adapter is retried then surfaced as retriable") {
  std::vector<std::chrono::milliseconds> sleeps;
  FetchOptions options;
  options.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };

  auto ok = Fetch(std::make_shared<FlakyAdapter>(2), WideQuery(), options);
  CHECK(Drain(ok).size() == 3);
  CHECK(ok.stats().retries == 2);
  // Two backoffs plus rate-limit waits before pages 2 and 3.
  CHECK(sleeps.size() >= 2);

  auto down = Fetch(std::make_shared<FlakyAdapter>(5), WideQuery(), options);
  CHECK_THROWS_AS(Drain(down), RetriableError);

  auto missing = Fetch(std::make_shared<FileAdapter>("/nonexistent.jsonl"),
                       WideQuery(), options);
  CHECK_THROWS_AS(Drain(missing), RetriableError);
}

TEST_CASE("query validation") {
  SourceQuery q = WideQuery();
  q.date_from = *ParseDate("2022-01-01");
  q.date_to = *ParseDate("2021-01-01");
  CHECK_THROWS_AS(q.Validate(false), Error);
  q = WideQuery();
  CHECK_THROWS_AS(q.Validate(true), Error);
  q.keywords = {"ጥላቻ"};
  CHECK_NOTHROW(q.Validate(true));
  q.max_items = 0;
  CHECK_THROWS_AS(q.Validate(false), Error);
}

TEST_CASE("registry") {
  AdapterRegistry registry;
  registry.Register("twitter-fixture",
                    std::make_shared<FileAdapter>(FixturePath("posts_3.jsonl")));
  CHECK(registry.Get("twitter-fixture") != nullptr);
  CHECK_THROWS_AS(registry.Get("facebook"), Error);
}

TEST_CASE("concurrent fetch matches sequential fetch") {
  std::vector<std::shared_ptr<SourceAdapter>> adapters = {
      std::make_shared<FileAdapter>(FixturePath("posts_3.jsonl")),
      std::make_shared<FileAdapter>(FixturePath("posts_10.jsonl"), 2)};
  std::vector<FetchStats> stats;
  auto results = FetchConcurrently(adapters, WideQuery(), &stats);
  REQUIRE(results.size() == 2);
  CHECK(results[0].size() == 3);
  CHECK(results[1].size() == 10);
  CHECK(stats[1].pages == 5);
}

TEST_CASE("consolidate") {
  auto a = MakePost("a1", "ሰላም ነው", "2020-01-02T00:00:00Z");
  auto b = MakePost("b1", "ሰላም ነው", "2020-01-01T00:00:00Z");
  auto merged = Consolidate({{a}, {b}});
  CHECK(Ids(merged) == std::vector<std::string>{"b1"});

  auto h1 = MakePost("h1", "ሐበሻ", "2020-01-01T00:00:00Z");
  auto h2 = MakePost("h2", "ሀበሻ", "2020-01-01T00:00:00Z");
  CHECK(Consolidate({{h2}, {h1}}).size() == 1);
  CHECK(Consolidate({{h2}, {h1}})[0].id == "h1");

  std::vector<RawPost> s1 = {
      MakePost("x3", "አንድ", "2020-01-03T00:00:00Z"),
      MakePost("x1", "ሁለት", "2020-01-01T00:00:00Z"),
      MakePost("x2", "ሶስት", "2020-01-02T00:00:00Z")};
  std::vector<RawPost> s2 = {MakePost("y2", "አራት", "2020-01-02T00:00:00Z"),
                             MakePost("y0", "አምስት", "2019-12-31T00:00:00Z")};
  CHECK(Ids(Consolidate({s1, s2})) ==
        std::vector<std::string>{"y0", "x1", "x2", "y2", "x3"});
  CHECK(Consolidate({}).empty());
}

TEST_CASE("language filter") {
  auto posts = std::vector<RawPost>{
      MakePost("1", "ሰላም ለዓለም", "2020-01-01T00:00:00Z"),
      MakePost("2", "Hello world", "2020-01-01T00:00:00Z"),
      MakePost("3", "ሰላም hello", "2020-01-01T00:00:00Z"),
      MakePost("4", "12345 !!!", "2020-01-01T00:00:00Z"),
      MakePost("5", "ሰላም ነው https://example.com/a/b", "2020-01-01T00:00:00Z")};
  EthiopicFractionDetector detector;
  CHECK(*detector.AmharicScore("ሰላም ለዓለም") == doctest::Approx(1.0));
  CHECK(*detector.AmharicScore("Hello world") == doctest::Approx(0.0));
  CHECK(*detector.AmharicScore("ሰላም hello") == doctest::Approx(0.375));
  CHECK_FALSE(detector.AmharicScore("12345 !!!"));
  CHECK(Ids(LanguageFilter(posts)) == std::vector<std::string>{"1", "5"});
  CHECK(Ids(LanguageFilter(posts, 0.3)) ==
        std::vector<std::string>{"1", "3", "5"});
  CHECK_THROWS_AS(LanguageFilter(posts, 1.5), Error);
}

TEST_CASE("keyword filter") {
  const auto &norm = textnorm::DefaultNormalizer();
  auto lexicon =
      KeywordLexicon::FromFile(FixturePath("lexicon_small.tsv"), norm);
  CHECK(lexicon.entries().size() == 4);

  auto adapter =
      std::make_shared<FileAdapter>(FixturePath("posts_keyword_20.jsonl"));
  auto stream = Fetch(adapter, WideQuery());
  auto posts = Drain(stream);
  REQUIRE(posts.size() == 20);
  auto result = KeywordFilter(posts, lexicon);
  CHECK(Ids(result.kept) == std::vector<std::string>{"p002", "p005", "p006",
                                                     "p009", "p013", "p017",
                                                     "p020"});
  CHECK(result.theme_counts[Theme::kHate] == 2);
  CHECK(result.theme_counts[Theme::kReligion] == 2);
  CHECK(result.theme_counts[Theme::kGender] == 2);
  CHECK(result.theme_counts[Theme::kOffensive] == 1);
  CHECK(result.kept[1].keyword_themes == std::vector<std::string>{"religion"});
  CHECK(SerializeRawPost(result.kept[0], true).find(
            "\"keyword_themes\":[\"hate\"]") != std::string::npos);

  CHECK_THROWS_AS(KeywordFilter(posts, KeywordLexicon()), Error);
}

TEST_CASE("filters keep order-preserving subsequences on random fixtures") {
  const auto &norm = textnorm::DefaultNormalizer();
  KeywordLexicon lexicon;
  lexicon.Add("ጥላቻ", Theme::kHate, norm);
  lexicon.Add("ሴት", Theme::kGender, norm);
  const char *vocab[] = {"ሰላም", "ቤት", "ጥላቻ", "ሴት", "hello", "world",
                         "ሐበሻ", "123", "ልጅ"};
  Rng rng(7);
  SourceQuery query = WideQuery();
  query.date_from = *ParseDate("2016-01-01");
  query.date_to = *ParseDate("2018-12-31");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawPost> posts;
    for (int i = 0; i < 30; ++i) {
      std::string text;
      int n = 1 + static_cast<int>(rng.Below(5));
      for (int k = 0; k < n; ++k) {
        if (k) text += ' ';
        text += vocab[rng.Below(9)];
      }
      int year = 2015 + static_cast<int>(rng.Below(5));
      std::string ts = std::to_string(year) + "-06-01T00:00:00Z";
      posts.push_back(MakePost("r" + std::to_string(i), text, ts.c_str()));
    }
    std::vector<RawPost> windowed;
    for (const auto &p : posts) {
      if (query.Contains(p.created_at)) windowed.push_back(p);
    }
    auto lang = LanguageFilter(windowed);
    auto kw = KeywordFilter(lang, lexicon).kept;

    auto is_subsequence = [](const std::vector<RawPost> &sub,
                             const std::vector<RawPost> &full) {
      size_t j = 0;
      for (const auto &p : full) {
        if (j < sub.size() && sub[j].id == p.id) ++j;
      }
      return j == sub.size();
    };
    CHECK(is_subsequence(lang, windowed));
    CHECK(is_subsequence(kw, lang));
    EthiopicFractionDetector detector;
    for (const auto &p : kw) {
      CHECK(query.Contains(p.created_at));
      CHECK(*detector.AmharicScore(norm.Normalize(p.text)) >= 0.6);
      CHECK_FALSE(p.keyword_themes.empty());
    }
    auto once = Consolidate({posts});
    auto twice = Consolidate({once});
    CHECK(Ids(once) == Ids(twice));
  }
}

}  // namespace
}  // namespace amhs::ingest
