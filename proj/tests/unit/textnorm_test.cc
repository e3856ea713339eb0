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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common/error.h"
#include "support/random_text.h"
#include "textnorm/normalizer.h"
#include "textnorm/utf8.h"

namespace amhs::textnorm {
namespace {

TEST_CASE("normalize examples") {
  CHECK(Normalize("") == "");
  CHECK(Normalize("ሰላም") == "ሰላም");
  CHECK(Normalize("ሐበሻ ነኝ። http://t.co/x @user") == "ሀበሻ ነኝ");
}

TEST_CASE("homophone fixture table") {
  struct Row {
    const char *in;
    const char *out;
  };
  const Row rows[] = {
      {"ሐበሻ", "ሀበሻ"},     {"ኀይል", "ሀይል"},   {"ኸረ", "ሀረ"},
      {"ሠላም", "ሰላም"},     {"ሥራ", "ስራ"},      {"ዐይን", "አይን"},
      {"ዓለም", "ኣለም"},     {"ፀሐይ", "ጸሀይ"},   {"ፅድቅ", "ጽድቅ"},
      {"ሑሉ", "ሁሉ"},       {"ሖ", "ሆ"},         {"ሗ", "ኋ"},
      {"ዃ", "ኋ"},         {"ኇ", "ሇ"},         {"ሧ", "ሷ"},
      {"ፇ", "ጿ"},
  };
  for (const auto &row : rows) {
    CAPTURE(row.in);
    CHECK(Normalize(row.in) == row.out);
  }
}

TEST_CASE("default table folds every vowel order in place") {
  const auto table = NormalizationTable::Default();
  struct Family {
    char32_t from;
    char32_t to;
  };
  const Family families[] = {{0x1210, 0x1200}, {0x1280, 0x1200},
                             {0x12B8, 0x1200}, {0x1220, 0x1230},
                             {0x12D0, 0x12A0}, {0x1340, 0x1338}};
  for (const auto &f : families) {
    for (int order = 0; order < 7; ++order) {
      CHECK(table.Map(f.from + order) == f.to + order);
    }
  }
  for (const auto &[from, to] : table.entries()) {
    CHECK(table.Map(to) == to);
    CHECK_FALSE(table.IsFoldedAway(to));
  }
}

TEST_CASE("tokenize") {
  CHECK(Tokenize("ሀበሻ ነኝ") == std::vector<std::string>{"ሀበሻ", "ነኝ"});
  CHECK(Tokenize("").empty());
  // ዓ folds to ኣ under the ዐ -> አ family rule.
  CHECK(Tokenize(Normalize("ሰላም፡ለዓለም")) ==
        std::vector<std::string>{"ሰላም", "ለኣለም"});
}

TEST_CASE("removal rules") {
  CHECK(Normalize("#ጥላቻ ነው") == "ጥላቻ ነው");
  CHECK(Normalize("ሰላም😀😀 ነው") == "ሰላም ነው");
  CHECK(Normalize("👍🏽ሰላም") == "ሰላም");
  CHECK(Normalize("ሰላም፣ ሰላም፤ ሰላም፥ ሰላም፦ ሰላም፧") == "ሰላም ሰላም ሰላም ሰላም ሰላም");
  CHECK(Normalize("ቁጥር 123 ፲፪") == "ቁጥር");
  CHECK(Normalize("abc123def") == "abcdef");
  CHECK(Normalize("a,b.c!") == "a b c");
  CHECK(Normalize("  \t ሰላም \n\n ነው  ") == "ሰላም ነው");
  CHECK(Normalize("see WWW.example.com/x now") == "see now");
  CHECK(Normalize("HTTPS://x.y/z") == "");
  CHECK(Normalize("mail @ here") == "mail here");
  // Composition across a deleted digit.
  CHECK(Normalize("e1́") == "é");
}

TEST_CASE("clean document") {
  const auto doc = DefaultNormalizer().Clean("p1", "ሐበሻ፡ነኝ።");
  CHECK(doc.id == "p1");
  CHECK(doc.raw_text == "ሐበሻ፡ነኝ።");
  CHECK(doc.norm_text == "ሀበሻ ነኝ");
  CHECK(doc.tokens == std::vector<std::string>{"ሀበሻ", "ነኝ"});
}

TEST_CASE("table file extends the default table") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "amhs_norm_table.tsv";
  {
    std::ofstream out(path);
    out << "# extra folds\n";
    out << "ቨ\tበ\n";
  }
  Normalizer norm(NormalizationTable::FromFile(path.string()));
  CHECK(norm.Normalize("ቨሐ") == "በሀ");

  {
    std::ofstream out(path);
    out << "ሀ\tሐ\n";  // target ሐ is folded away by the default table
  }
  CHECK_THROWS_AS(NormalizationTable::FromFile(path.string()), Error);
  {
    std::ofstream out(path);
    out << "ab\tc\n";
  }
  CHECK_THROWS_AS(NormalizationTable::FromFile(path.string()), Error);
  fs::remove(path);
}

TEST_CASE("idempotence and forbidden output on random strings") {
  testing::RandomText gen(20240611);
  const auto &table = DefaultNormalizer().table();
  for (int i = 0; i < 10000; ++i) {
    std::string s = gen.Next();
    std::string once = Normalize(s);
    std::string twice = Normalize(once);
    CAPTURE(s);
    REQUIRE(once == twice);
    CHECK(once.find("http://") == std::string::npos);
    CHECK(once.find("https://") == std::string::npos);
    CHECK(once.find("www.") == std::string::npos);
    CHECK(once.find('@') == std::string::npos);
    CHECK(once.find('#') == std::string::npos);
    CHECK(once.find("  ") == std::string::npos);
    if (!once.empty()) {
      CHECK(once.front() != ' ');
      CHECK(once.back() != ' ');
    }
    for (char32_t c : DecodeUtf8(once)) {
      REQUIRE_FALSE(table.IsFoldedAway(c));
      REQUIRE_FALSE(IsRemovedEthiopicPunct(c));
      REQUIRE_FALSE((c >= U'0' && c <= U'9'));
    }
    std::string joined;
    for (const auto &tok : Tokenize(once)) {
      REQUIRE_FALSE(tok.empty());
      if (!joined.empty()) joined += ' ';
      joined += tok;
    }
    CHECK(joined == once);
  }
}

}  // namespace
}  // namespace amhs::textnorm
