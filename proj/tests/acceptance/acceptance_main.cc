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

// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "annotation/service.h"
#include "balance/smote.h"
#include "common/error.h"
#include "common/fileutil.h"
#include "common/log.h"
#include "common/rng.h"
#include "eval/metrics.h"
#include "features/tfidf.h"
#include "features/vocabulary.h"
#include "models/linear_model.h"
#include "models/sbilstm.h"
#include "pipeline/config.h"
#include "pipeline/pipeline.h"
#include "pipeline/synthetic.h"
#include "support/annotation_sim.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/random_text.h"
#include "textnorm/normalizer.h"
#include "textnorm/utf8.h"

namespace amhs {
namespace {

namespace fs = std::filesystem;
using features::SparseRow;
using textnorm::CleanDocument;

// Collects the first failure of a criterion.
class Outcome {
 public:
  void Expect(bool cond, const std::string &what) {
    if (!cond && failure_.empty()) failure_ = what;
  }
  void Note(const std::string &s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failure_.empty(); }
  const std::string &failure() const { return failure_; }
  const std::string &notes() const { return notes_; }

 private:
  std::string failure_;
  std::string notes_;
};

std::string Fmt(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void SmoteSuite(Outcome &out) {
  Rng gen(2024);
  auto on_neighbor_segment = [](const std::vector<balance::Vector> &m, size_t k,
                                const balance::Vector &s) {
    for (size_t i = 0; i < m.size(); ++i) {
      for (size_t j : testing::BruteForceKnn(m, i, k)) {
        if (testing::OnSegment(m[i], m[j], s)) return true;
      }
    }
    return false;
  };
  const int kInstances = 20;
  size_t checked = 0;
  for (int trial = 0; trial < kInstances; ++trial) {
    // Up to 200 points over four classes, up to 10 dimensions.
    size_t dim = 1 + gen.Below(10);
    std::array<size_t, kNumLabels> sizes;
    size_t total = 0;
    for (auto &s : sizes) {
      s = 2 + gen.Below(48);
      total += s;
    }
    std::vector<balance::Vector> x;
    std::vector<Label> y;
    for (int c = 0; c < kNumLabels; ++c) {
      for (size_t i = 0; i < sizes[c]; ++i) {
        balance::Vector p(dim);
        for (auto &v : p) v = gen.Uniform(-5, 5);
        x.push_back(p);
        y.push_back(LabelFromIndex(c));
      }
    }
    int k = 1 + static_cast<int>(gen.Below(5));
    auto bal = balance::BalanceDataset(x, y, balance::Mode::kSmote, trial, k);
    auto counts = balance::CountLabels(bal.y);
    size_t target = *std::max_element(sizes.begin(), sizes.end());
    for (int c = 0; c < kNumLabels; ++c) {
      out.Expect(counts[c] == target, "class counts not equal after balancing");
    }
    for (size_t i = x.size(); i < bal.x.size(); ++i) {
      std::vector<balance::Vector> minority;
      for (size_t j = 0; j < x.size(); ++j) {
        if (y[j] == bal.y[i]) minority.push_back(x[j]);
      }
      size_t kc = std::min<size_t>(k, minority.size() - 1);
      out.Expect(on_neighbor_segment(minority, kc, bal.x[i]),
                 "synthetic point off every neighbour segment");
      ++checked;
    }
    auto again = balance::BalanceDataset(x, y, balance::Mode::kSmote, trial, k);
    out.Expect(again.x == bal.x && again.y == bal.y, "not deterministic under seed");
    (void)total;
  }
  out.Note(std::to_string(kInstances) + " instances, " + std::to_string(checked) +
           " synthetic points");
}

std::vector<CleanDocument> Docs(const std::vector<std::string> &texts) {
  std::vector<CleanDocument> docs;
  for (size_t i = 0; i < texts.size(); ++i) {
    docs.push_back(textnorm::DefaultNormalizer().Clean("d" + std::to_string(i), texts[i]));
  }
  return docs;
}

std::vector<std::vector<std::string>> Tokens(const std::vector<CleanDocument> &docs) {
  std::vector<std::vector<std::string>> out;
  for (const auto &d : docs) out.push_back(d.tokens);
  return out;
}

void TfidfSuite(Outcome &out) {
  auto docs = Docs({"a b", "a c"});
  auto v = features::Vocabulary::Build(docs, 1);
  out.Expect(std::fabs(features::Idf(v, v.Index("a")) - 1.0) <= 1e-12, "idf(a) != 1");
  out.Expect(std::fabs(features::Idf(v, v.Index("b")) - 1.4055) <= 5e-5, "idf(b) != 1.4055");
  auto row = features::Tfidf(docs, v).DenseRow(0);
  out.Expect(row.size() == 3 && std::fabs(row[0] - 0.5797) <= 5e-5 &&
                 std::fabs(row[1] - 0.8148) <= 5e-5 && row[2] == 0.0,
             "worked example row differs from (0.5797, 0.8148, 0)");

  Rng rng(99);
  const char *alphabet[] = {"ሰ", "ላ", "ም", "ቤ", "ት", "ል", "ጅ", "ው", "ሃ"};
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
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
    std::vector<std::string> texts;
    int n = 1 + static_cast<int>(rng.Below(50));
    for (int i = 0; i < n; ++i) texts.push_back(random_doc());
    auto corpus = Docs(texts);
    int min_df = 1 + static_cast<int>(rng.Below(2));
    auto vocab = features::Vocabulary::Build(corpus, min_df);
    auto want = testing::NaiveTfidf(Tokens(corpus), Tokens(corpus), min_df);
    auto m = features::Tfidf(corpus, vocab);
    for (size_t r = 0; r < m.rows.size(); ++r) {
      std::map<std::string, double> got;
      for (const auto &[c, w] : m.rows[r]) {
        got[vocab.Token(c + features::Vocabulary::kNumSpecials)] = w;
      }
      out.Expect(got.size() == want[r].size(), "term sets differ from oracle");
      for (const auto &[tok, w] : want[r]) {
        double diff = got.count(tok) ? std::fabs(got[tok] - w) : 1.0;
        worst = std::max(worst, diff);
      }
    }
  }
  out.Expect(worst <= 1e-9, "oracle mismatch " + Fmt("%.3g", worst));
  out.Note("30 corpora, max |diff| " + Fmt("%.2g", worst));
}

double RelativeError(const std::vector<double> &a, const std::vector<double> &n) {
  double diff = 0.0, sa = 0.0, sn = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    diff += (a[k] - n[k]) * (a[k] - n[k]);
    sa += a[k] * a[k];
    sn += n[k] * n[k];
  }
  double den = std::sqrt(sa) + std::sqrt(sn);
  return den == 0.0 ? 0.0 : std::sqrt(diff) / den;
}

void GradientSuite(Outcome &out) {
  Rng rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    size_t dim = 2 + rng.Below(6);
    size_t n = 2 + rng.Below(8);
    std::vector<SparseRow> x(n);
    std::vector<Label> y(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t c = 0; c < dim; ++c) {
        if (rng.Below(3)) x[i].push_back({static_cast<int>(c), rng.Normal(0, 1)});
      }
      y[i] = LabelFromIndex(static_cast<int>(rng.Below(4)));
    }
    models::LinearModel m(dim);
    for (double &w : m.weights()) w = rng.Normal(0, 0.5);
    for (double &b : m.bias()) b = rng.Normal(0, 0.5);
    const double l2 = 0.01 * trial;
    std::vector<double> gw;
    models::Distribution gb;
    m.Gradient(x, y, l2, &gw, &gb);
    const double h = 1e-5;
    std::vector<double> analytic = gw, numeric(gw.size() + 4);
    analytic.insert(analytic.end(), gb.begin(), gb.end());
    auto probe = [&](double &slot, size_t k) {
      double keep = slot;
      slot = keep + h;
      double up = m.Loss(x, y, l2);
      slot = keep - h;
      double down = m.Loss(x, y, l2);
      slot = keep;
      numeric[k] = (up - down) / (2 * h);
    };
    for (size_t k = 0; k < gw.size(); ++k) probe(m.weights()[k], k);
    for (int c = 0; c < 4; ++c) probe(m.bias()[c], gw.size() + c);
    worst = std::max(worst, RelativeError(analytic, numeric));
  }
  out.Expect(worst <= 1e-5, "relative error " + Fmt("%.3g", worst));
  out.Note("10 instances, max relative error " + Fmt("%.2g", worst));
}

void OverfitSuite(Outcome &out) {
  const std::vector<Label> y = {Label::kRacial, Label::kReligious, Label::kGender,
                                Label::kNonhate};
  std::vector<SparseRow> x = {{{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}};
  models::LinearConfig lc;
  lc.epochs = 500;
  auto lin = models::TrainLinear(x, y, 4, lc);
  int lin_ok = 0;
  for (size_t i = 0; i < 4; ++i) lin_ok += lin.Predict(x[i]).label == y[i];
  out.Expect(lin_ok == 4, "linear training accuracy below 100%");

  models::SBiLstmConfig sc;
  sc.embedding_dim = 16;
  sc.hidden = 16;
  sc.dense = 16;
  sc.dropout = 0.0;
  sc.max_len = 4;
  sc.epochs = 200;
  sc.seed = 3;
  features::SequenceBatch seqs;
  seqs.max_len = 4;
  for (int32_t t = 2; t < 6; ++t) {
    seqs.ids.insert(seqs.ids.end(), {t, 0, 0, 0});
    seqs.lengths.push_back(1);
  }
  auto net = models::TrainSBiLstm({&seqs, &y}, nullptr, sc, 6);
  int net_ok = 0;
  for (size_t i = 0; i < 4; ++i) {
    net_ok += net.Predict(seqs.Row(i), seqs.lengths[i]).label == y[i];
  }
  out.Expect(net_ok == 4, "sbilstm training accuracy below 100%");
  out.Note("linear " + std::to_string(lin_ok) + "/4 in 500 epochs, sbilstm " +
           std::to_string(net_ok) + "/4 in 200 epochs");
}

void MaskingSuite(Outcome &out) {
  models::SBiLstmConfig c;
  c.embedding_dim = 8;
  c.hidden = 6;
  c.dense = 8;
  c.max_len = 30;
  c.seed = 5;
  models::SBiLstmModel m(c, 20);
  Rng rng(10);
  double worst = 0.0, worst_sum = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int32_t> row;
    int length = static_cast<int>(rng.Below(10));
    for (int t = 0; t < length; ++t) row.push_back(1 + static_cast<int32_t>(rng.Below(19)));
    auto base = m.Predict(row, length);
    for (size_t extra = 1; extra <= 20; extra += 4) {
      auto padded = row;
      padded.resize(row.size() + extra, 0);
      auto p = m.Predict(padded, length);
      double s = 0.0;
      for (int k = 0; k < kNumLabels; ++k) {
        worst = std::max(worst, std::fabs(p.distribution[k] - base.distribution[k]));
        s += p.distribution[k];
      }
      worst_sum = std::max(worst_sum, std::fabs(s - 1.0));
    }
  }
  out.Expect(worst < 1e-6, "padding moved a probability by " + Fmt("%.3g", worst));
  out.Expect(worst_sum <= 1e-6, "softmax sum off by " + Fmt("%.3g", worst_sum));
  out.Note("max shift " + Fmt("%.2g", worst) + ", max |sum-1| " + Fmt("%.2g", worst_sum));
}

void MetricsSuite(Outcome &out) {
  std::vector<Label> gold;
  for (int i = 0; i < 25; ++i) {
    for (Label l : kAllLabels) gold.push_back(l);
  }
  std::vector<Label> one(gold.size(), Label::kGender);
  out.Expect(eval::ComputeMetrics(gold, one).macro_f1 == 0.1,
             "one-class predictor macro-F1 != 0.1");
  out.Expect(eval::ComputeMetrics(gold, gold).macro_f1 == 1.0,
             "perfect predictor macro-F1 != 1");
  Rng rng(12);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng.Below(300);
    std::vector<Label> g, p;
    std::vector<int> gi, pi;
    for (size_t i = 0; i < n; ++i) {
      gi.push_back(static_cast<int>(rng.Below(4)));
      pi.push_back(rng.Below(3) ? gi.back() : static_cast<int>(rng.Below(4)));
      g.push_back(LabelFromIndex(gi.back()));
      p.push_back(LabelFromIndex(pi.back()));
    }
    auto m = eval::ComputeMetrics(g, p);
    auto o = testing::NaiveRecount(gi, pi);
    for (int c = 0; c < 4; ++c) {
      worst = std::max({worst, std::fabs(m.precision[c] - o.precision[c]),
                        std::fabs(m.recall[c] - o.recall[c]),
                        std::fabs(m.f1[c] - o.f1[c])});
    }
    worst = std::max(worst, std::fabs(m.macro_f1 - o.macro_f1));
  }
  out.Expect(worst <= 1e-12, "recount differs by " + Fmt("%.3g", worst));
  out.Note("200 random recounts, max |diff| " + Fmt("%.2g", worst));
}

void NormalizationSuite(Outcome &out) {
  struct Row {
    const char *in;
    const char *out;
  };
  const Row rows[] = {
      {"ሐበሻ", "ሀበሻ"}, {"ኀይል", "ሀይል"}, {"ኸረ", "ሀረ"}, {"ሠላም", "ሰላም"},
      {"ሥራ", "ስራ"},   {"ዐይን", "አይን"}, {"ዓለም", "ኣለም"}, {"ፀሐይ", "ጸሀይ"},
      {"ፅድቅ", "ጽድቅ"}, {"ሑሉ", "ሁሉ"},   {"ሖ", "ሆ"},     {"ሗ", "ኋ"},
      {"ዃ", "ኋ"},     {"ኇ", "ሇ"},     {"ሧ", "ሷ"},     {"ፇ", "ጿ"},
  };
  for (const auto &r : rows) {
    out.Expect(textnorm::Normalize(r.in) == r.out,
               std::string("homophone row ") + r.in);
  }
  testing::RandomText gen(20240611);
  const auto &table = textnorm::DefaultNormalizer().table();
  for (int i = 0; i < 10000; ++i) {
    std::string once = textnorm::Normalize(gen.Next());
    out.Expect(textnorm::Normalize(once) == once, "not idempotent");
    for (char32_t c : textnorm::DecodeUtf8(once)) {
      out.Expect(!table.IsFoldedAway(c) && !textnorm::IsRemovedEthiopicPunct(c) &&
                     !(c >= U'0' && c <= U'9'),
                 "forbidden codepoint in output");
    }
    out.Expect(once.find("http") == std::string::npos &&
                   once.find('@') == std::string::npos &&
                   once.find('#') == std::string::npos,
               "url or mention survived");
  }
  out.Note("16 homophone rows, 10000 random strings");
}

std::string RunPipeline(const nlohmann::ordered_json &user,
                        const std::string &base, const std::string &out_dir,
                        Outcome &out) {
  pipeline::ConfigOverrides ov;
  ov.out_dir = out_dir;
  pipeline::Pipeline p(pipeline::ResolveConfig(user, base, ov));
  p.Ingest();
  p.Filter();
  p.ExportGold("", base + "/labels.tsv");
  for (auto t : {models::ModelType::kRule, models::ModelType::kLinear,
                 models::ModelType::kSBiLstm}) {
    p.Train(t);
    p.Evaluate(t);
  }
  auto summary = p.Compare();
  const auto gold = pipeline::ReadGold(p.config().gold);
  out.Expect(gold.docs.size() == 1200, "gold set is not 1200 documents");
  std::string reports;
  for (const char *f : {"compare/comparison.json", "compare/comparison.txt",
                        "evaluate/rule/report.json", "evaluate/linear/report.json",
                        "evaluate/sbilstm/report.json", "train/sbilstm/model.json"}) {
    reports += ReadFile(out_dir + "/" + f);
  }
  return summary["f1"].dump() + "\n" + reports;
}

void EndToEndSuite(Outcome &out) {
  auto dir = testing::ScratchDir("acceptance_e2e");
  pipeline::SyntheticOptions opt;
  opt.seed = 1;
  auto corpus = pipeline::GenerateSynthetic(opt);
  out.Expect(corpus.labels.size() == 1200, "generator did not produce 1200 documents");
  const std::string base = (dir / "corpus").string();
  pipeline::WriteSynthetic(corpus, base);

  // Model settings come from the bundled benchmark config.
  auto bundled = nlohmann::ordered_json::parse(
      ReadFile(std::string(AMHS_SOURCE_DIR) + "/data/synthetic/config.json"));
  nlohmann::ordered_json user = bundled;
  user["ingest"]["sources"] = {{{"adapter", "file"}, {"path", "posts_twitter.jsonl"}},
                               {{"adapter", "file"}, {"path", "posts_facebook.jsonl"}}};
  user["filter"]["lexicon"] = "filter_lexicon.tsv";
  user["models"]["rule"]["lexicon"] = "rule_lexicon.tsv";

  std::string a = RunPipeline(user, base, (dir / "run1").string(), out);
  std::string b = RunPipeline(user, base, (dir / "run2").string(), out);
  out.Expect(a == b, "reports differ between two runs");

  auto f1 = nlohmann::json::parse(a.substr(0, a.find('\n')));
  double s = f1["sbilstm"], l = f1["linear"], r = f1["rule"];
  out.Expect(s >= l && l >= r, "macro-F1 ordering sbilstm >= linear >= rule fails");
  out.Note("macro-F1 sbilstm " + Fmt("%.4f", s) + ", linear " + Fmt("%.4f", l) +
           ", rule " + Fmt("%.4f", r) + "; two runs byte-identical: " +
           (a == b ? "yes" : "no"));
  fs::remove_all(dir);
}

void AnnotationSuite(Outcome &out) {
  for (const char *kind : {"memory", "sqlite"}) {
    std::unique_ptr<annotation::Store> store;
    if (std::string(kind) == "memory") {
      store = std::make_unique<annotation::MemoryStore>();
    } else {
      auto dir = testing::ScratchDir("acceptance_sim");
      store = annotation::OpenSqliteStore((dir / "store.db").string());
    }
    annotation::AnnotationService svc(std::move(store), testing::MakeRegistry(50));
    auto ds = svc.ImportDataset(testing::PoolContent(200)).dataset_id;
    auto sim = testing::RunConcurrentSimulation(svc, ds, 50, 7);
    out.Expect(sim.failure.empty(), std::string(kind) + ": " + sim.failure);
    out.Expect(sim.duplicate_rejections == sim.active_annotators,
               std::string(kind) + ": a duplicate vote was accepted");
    out.Note(std::string(kind) + " " + std::to_string(sim.votes) + " votes, " +
             std::to_string(sim.complete) + " complete, " +
             std::to_string(sim.adjudication) + " adjudication");
  }
  std::vector<std::array<int, kNumLabels>> unanimous = {
      {3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}, {3, 0, 0, 0}};
  out.Expect(annotation::FleissKappa(unanimous) == 1.0, "unanimous kappa != 1");
  double k = annotation::FleissKappa(testing::MixedFleissTable());
  out.Expect(std::fabs(k - testing::kMixedFleissKappa) <= 1e-9,
             "mixed fixture kappa " + Fmt("%.12f", k));
  out.Note("mixed kappa " + Fmt("%.9f", k));
}

struct Criterion {
  const char *name;
  double limit_seconds;  // 0: no runtime bound
  std::function<void(Outcome &)> run;
};

}  // namespace
}  // namespace amhs

int main() {
  using namespace amhs;
  SetLogLevel(spdlog::level::warn);
  const Criterion criteria[] = {
      {"SMOTE oracle suite", 10, SmoteSuite},
      {"TF-IDF equivalence", 5, TfidfSuite},
      {"Gradient check", 10, GradientSuite},
      {"Overfit checks", 120, OverfitSuite},
      {"Masking invariance", 0, MaskingSuite},
      {"Metrics hand-check", 0, MetricsSuite},
      {"Normalization suite", 0, NormalizationSuite},
      {"End-to-end synthetic benchmark", 600, EndToEndSuite},
      {"Annotation backend concurrency", 0, AnnotationSuite},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception &e) {
      out.Expect(false, std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0) {
      out.Expect(secs < c.limit_seconds,
                 "took " + Fmt("%.1f", secs) + " s, limit " + Fmt("%.0f", c.limit_seconds) + " s");
    }
    std::printf("%s  %s  (%.2f s)  %s\n", out.ok() ? "PASS" : "FAIL",
                c.name, secs, out.ok() ? out.notes().c_str() : out.failure().c_str());
    std::fflush(stdout);
    failed += !out.ok();
  }
  return failed == 0 ? 0 : 1;
}
