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

#include <cmath>
#include <filesystem>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/rng.h"
#include "features/embeddings.h"
#include "features/sequences.h"
#include "features/tfidf.h"
#include "features/vocabulary.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "textnorm/utf8.h"

namespace amhs::features {
namespace {

using textnorm::CleanDocument;

std::vector<CleanDocument> Docs(const std::vector<std::string> &texts) {
  std::vector<CleanDocument> docs;
  for (size_t i = 0; i < texts.size(); ++i) {
    docs.push_back(
        textnorm::DefaultNormalizer().Clean("d" + std::to_string(i), texts[i]));
  }
  return docs;
}

std::vector<std::vector<std::string>> TokenLists(
    const std::vector<CleanDocument> &docs) {
  std::vector<std::vector<std::string>> out;
  for (const auto &d : docs) out.push_back(d.tokens);
  return out;
}

TEST_CASE("build_vocab") {
  auto docs = Docs({"a b", "a c"});
  auto v = Vocabulary::Build(docs, 1);
  REQUIRE(v.size() == 5);
  CHECK(v.Token(0) == "<pad>");
  CHECK(v.Token(1) == "<unk>");
  CHECK(v.Token(2) == "a");
  CHECK(v.Token(3) == "b");
  CHECK(v.Token(4) == "c");
  CHECK(v.Df(2) == 2);
  CHECK(v.Df(3) == 1);
  CHECK(v.Df(4) == 1);
  CHECK(v.Index("zzz") == Vocabulary::kUnknown);

  auto v2 = Vocabulary::Build(docs, 2);
  CHECK(v2.num_terms() == 1);
  CHECK(v2.Token(2) == "a");

  CHECK_THROWS_AS(Vocabulary::Build(std::vector<CleanDocument>{}, 1), Error);
  CHECK_THROWS_AS(Vocabulary::Build(docs, 0), Error);

  auto round = Vocabulary::FromJson(v.ToJson());
  CHECK(round.hash() == v.hash());
  CHECK(round.Index("c") == 4);
  CHECK(v.hash() != v2.hash());
}

TEST_CASE("tfidf worked example") {
  auto docs = Docs({"a b", "a c"});
  auto v = Vocabulary::Build(docs, 1);
  CHECK(Idf(v, v.Index("a")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Idf(v, v.Index("b")) ==
        doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-12));
  CHECK(Idf(v, v.Index("b")) == doctest::Approx(1.4055).epsilon(1e-4));
  auto m = Tfidf(docs, v);
  REQUIRE(m.cols == 3);
  auto row = m.DenseRow(0);
  CHECK(row[0] == doctest::Approx(0.5797).epsilon(1e-4));
  CHECK(row[1] == doctest::Approx(0.8148).epsilon(1e-4));
  CHECK(row[2] == 0.0);

  auto unseen = Tfidf(Docs({"x y z"}), v);
  CHECK(unseen.rows[0].empty());
  auto dup = Tfidf(Docs({"a c", "a c"}), v);
  CHECK(dup.rows[0] == dup.rows[1]);
}

TEST_CASE("tfidf matches the naive oracle on random corpora") {
  Rng rng(99);
  const char *alphabet[] = {"ሰ", "ላ", "ም", "ቤ", "ት", "ል", "ጅ", "ው", "ሃ"};
  for (int trial = 0; trial < 20; ++trial) {
    auto random_doc = [&] {
      std::string text;
      int n = static_cast<int>(rng.Below(8));
      for (int t = 0; t < n; ++t) {
        if (t) text += ' ';
        int len = 1 + static_cast<int>(rng.Below(2));
        for (int c = 0; c < len; ++c) text += alphabet[rng.Below(9)];
      }
      return text;
    };
    std::vector<std::string> train_text, eval_text;
    int n_train = 1 + static_cast<int>(rng.Below(50));
    for (int i = 0; i < n_train; ++i) train_text.push_back(random_doc());
    for (int i = 0; i < 10; ++i) eval_text.push_back(random_doc());
    auto train = Docs(train_text);
    auto eval = Docs(eval_text);
    int min_df = 1 + static_cast<int>(rng.Below(2));
    auto vocab = Vocabulary::Build(train, min_df);
    auto expected =
        testing::NaiveTfidf(TokenLists(train), TokenLists(train), min_df);
    auto expected_eval =
        testing::NaiveTfidf(TokenLists(train), TokenLists(eval), min_df);
    auto check = [&](const TfidfMatrix &m,
                     const std::vector<std::map<std::string, double>> &want) {
      for (size_t r = 0; r < m.rows.size(); ++r) {
        std::map<std::string, double> got;
        for (const auto &[c, w] : m.rows[r]) {
          got[vocab.Token(c + Vocabulary::kNumSpecials)] = w;
        }
        REQUIRE(got.size() == want[r].size());
        for (const auto &[tok, w] : want[r]) {
          REQUIRE(got.count(tok));
          CHECK(std::fabs(got[tok] - w) <= 1e-9);
        }
        if (!m.rows[r].empty()) {
          double n2 = 0.0;
          for (const auto &[c, w] : m.rows[r]) n2 += w * w;
          CHECK(std::fabs(std::sqrt(n2) - 1.0) <= 1e-9);
        }
      }
    };
    check(Tfidf(train, vocab), expected);
    check(Tfidf(eval, vocab), expected_eval);
  }
}

TEST_CASE("features never see the test side") {
  auto train = Docs({"ሰላም ነው", "ጥላቻ ነው", "ሰላም ቤት"});
  auto test = Docs({"ሰላም ጥላቻ", "ቤት"});
  auto vocab = Vocabulary::Build(train, 1);
  auto before = Tfidf(test, vocab);
  auto seq_before = ToSequences(test, vocab, 4);

  auto more_test = test;
  for (auto &d : Docs({"ሌላ ቃል ሰላም", "ሌላ ቃል"})) more_test.push_back(d);
  auto vocab_again = Vocabulary::Build(train, 1);
  CHECK(vocab_again.hash() == vocab.hash());
  auto after = Tfidf(more_test, vocab_again);
  auto seq_after = ToSequences(more_test, vocab_again, 4);
  for (size_t r = 0; r < test.size(); ++r) {
    CHECK(after.rows[r] == before.rows[r]);
    CHECK(std::vector<int32_t>(seq_after.Row(r).begin(), seq_after.Row(r).end()) ==
          std::vector<int32_t>(seq_before.Row(r).begin(), seq_before.Row(r).end()));
  }
}

TEST_CASE("triplet serialization round trip") {
  auto docs = Docs({"a b b", "a c", "d"});
  auto v = Vocabulary::Build(docs, 1);
  auto m = Tfidf(docs, v);
  auto text = m.ToTriplets();
  auto back = TfidfMatrix::FromTriplets(text);
  CHECK(back.cols == m.cols);
  CHECK(back.rows == m.rows);
  CHECK(back.ToTriplets() == text);
  CHECK_THROWS_AS(TfidfMatrix::FromTriplets("2 3 1\n5 0 1.0\n"), Error);
}

TEST_CASE("to_sequences") {
  // Vocabulary with a -> 2 and b -> 3.
  auto vocab = Vocabulary::Build(Docs({"a b", "a"}), 1);
  REQUIRE(vocab.Index("a") == 2);
  REQUIRE(vocab.Index("b") == 3);
  auto batch = ToSequences(Docs({"a b", "", "b a c a b a"}), vocab, 4);
  CHECK(std::vector<int32_t>(batch.Row(0).begin(), batch.Row(0).end()) ==
        std::vector<int32_t>{2, 3, 0, 0});
  CHECK(batch.lengths[0] == 2);
  CHECK(std::vector<int32_t>(batch.Row(1).begin(), batch.Row(1).end()) ==
        std::vector<int32_t>{0, 0, 0, 0});
  CHECK(batch.lengths[1] == 0);
  CHECK(std::vector<int32_t>(batch.Row(2).begin(), batch.Row(2).end()) ==
        std::vector<int32_t>{3, 2, 1, 2});
  CHECK(batch.lengths[2] == 4);
  CHECK_THROWS_AS(ToSequences(Docs({"a"}), vocab, 0), Error);
}

TEST_CASE("sequence de-indexing reproduces known tokens") {
  Rng rng(5);
  auto train = Docs({"ሀ ለ ሐ", "መ ሠ ረ", "ሰ ሸ ቀ"});
  auto vocab = Vocabulary::Build(train, 1);
  const char *pool[] = {"ሀ", "ለ", "መ", "ረ", "ሰ", "ሸ", "ቀ", "በ", "ተ"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> tokens;
    int n = static_cast<int>(rng.Below(10));
    for (int i = 0; i < n; ++i) tokens.push_back(pool[rng.Below(9)]);
    size_t max_len = 1 + rng.Below(8);
    int length = 0;
    auto row = ToSequence(tokens, vocab, max_len, &length);
    CHECK(length == static_cast<int>(std::min(tokens.size(), max_len)));
    for (int i = 0; i < length; ++i) {
      if (row[i] == Vocabulary::kUnknown) {
        CHECK_FALSE(vocab.Contains(tokens[i]));
      } else {
        CHECK(vocab.Token(row[i]) == tokens[i]);
      }
    }
    for (size_t i = length; i < max_len; ++i) CHECK(row[i] == Vocabulary::kPad);
  }
}

TEST_CASE("char ngrams are codepoint based") {
  auto grams = CharNgrams("ሰላም", 3, 6);
  // "<ሰላም>" has 5 codepoints: 3 trigrams, 2 four-grams, 1 five-gram.
  CHECK(grams.size() == 6);
  CHECK(grams.front() == "<ሰላ");
  CHECK(grams.back() == "ላም>");
  CHECK(std::find(grams.begin(), grams.end(), "<ሰላም>") != grams.end());
}

TEST_CASE("embedding training, composition and file round trip") {
  auto docs = Docs({"ሰላም ለሁሉም ይሁን", "ሰላም ነው ዛሬ", "ጥላቻ አይበጅም ሰላም",
                    "ዛሬ ሰላም ነው", "ለሁሉም ሰላም"});
  EmbeddingConfig config;
  config.dim = 16;
  config.epochs = 3;
  config.seed = 42;
  auto table = TrainEmbeddings(docs, config);
  CHECK(table.dim() == 16);
  CHECK(table.num_words() == 7);
  auto v = table.Vector("ሰላም");
  CHECK(Cosine(v, v) == doctest::Approx(1.0).epsilon(1e-12));

  // OOV composition recomputed by hand: mean over stored n-grams of "<ሰላምታ>".
  std::string oov = "ሰላምታ";
  REQUIRE(table.WordVector(oov) == nullptr);
  std::u32string chars = U"<ሰላምታ>";
  std::vector<double> sum(16, 0.0);
  int found = 0;
  for (size_t s = 0; s < chars.size(); ++s) {
    for (size_t n = 3; n <= 6 && s + n <= chars.size(); ++n) {
      std::string g = textnorm::EncodeUtf8(chars.substr(s, n));
      if (const auto *gv = table.NgramVector(g)) {
        for (int k = 0; k < 16; ++k) sum[k] += (*gv)[k];
        ++found;
      }
    }
  }
  REQUIRE(found > 0);
  auto composed = table.Vector(oov);
  for (int k = 0; k < 16; ++k) {
    CHECK(composed[k] == doctest::Approx(sum[k] / found).epsilon(1e-5));
  }

  auto again = TrainEmbeddings(docs, config);
  CHECK(again.Serialize() == table.Serialize());

  auto dir = testing::ScratchDir("emb");
  std::string path = (dir / "table.vec").string();
  table.Save(path);
  auto loaded = EmbeddingTable::Load(path);
  std::string path2 = (dir / "table2.vec").string();
  loaded.Save(path2);
  CHECK(ReadFile(path) == ReadFile(path2));
  CHECK(loaded.num_ngrams() == table.num_ngrams());

  std::string text = ReadFile(path);
  CHECK_THROWS_AS(EmbeddingTable::Parse(text.substr(0, text.size() / 2)),
                  Error);
  config.dim = 0;
  CHECK_THROWS_AS(TrainEmbeddings(docs, config), Error);
}

}  // namespace
}  // namespace amhs::features
