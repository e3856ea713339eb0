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

#include "pipeline/synthetic.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/hash.h"
#include "common/rng.h"
#include "textnorm/normalizer.h"
#include "textnorm/utf8.h"

namespace amhs::pipeline {
namespace {

// Consonant rows untouched by homophone folding.
constexpr char32_t kRows[] = {0x1208, 0x1218, 0x1228, 0x1230, 0x1238, 0x1240,
                              0x1260, 0x1270, 0x1278, 0x1290, 0x12A8, 0x12C8,
                              0x12D8, 0x12E8, 0x12F0, 0x1308, 0x1320, 0x1348};

class WordFactory {
 public:
  explicit WordFactory(Rng &rng) : rng_(rng) {}

  std::string Next() {
    for (;;) {
      std::u32string w;
      int syllables = 2 + static_cast<int>(rng_.Below(3));
      for (int s = 0; s < syllables; ++s) {
        char32_t row = kRows[rng_.Below(std::size(kRows))];
        w.push_back(row + static_cast<char32_t>(rng_.Below(7)));
      }
      std::string word = textnorm::EncodeUtf8(w);
      if (textnorm::Normalize(word) != word) continue;
      if (used_.insert(word).second) return word;
    }
  }

 private:
  Rng &rng_;
  std::set<std::string> used_;
};

constexpr const char *kLatin[] = {"hello", "world", "today", "match", "great",
                                  "news",  "video", "thanks", "city", "music"};

std::string Join(const std::vector<std::string> &tokens) {
  std::string out;
  for (const auto &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

SyntheticCorpus GenerateSynthetic(const SyntheticOptions &options) {
  if (options.num_docs < kNumLabels) {
    Fail(ErrorCode::kInvalidArgument, "synthetic corpus needs >= 4 documents");
  }
  Rng rng(options.seed);
  WordFactory words(rng);
  SyntheticCorpus corpus;
  std::vector<std::string> fillers;
  for (int i = 0; i < 200; ++i) fillers.push_back(words.Next());
  for (auto &kw : corpus.keywords) {
    for (int i = 0; i < 8; ++i) kw.push_back(words.Next());
  }
  corpus.negation = words.Next();
  corpus.marker = words.Next();

  auto filler = [&] { return fillers[rng.Below(fillers.size())]; };
  auto keyword = [&](int c) {
    const auto &kw = corpus.keywords[c];
    return kw[rng.Below(kw.size())];
  };
  auto with_fillers = [&](std::vector<std::string> core) {
    int n = 3 + static_cast<int>(rng.Below(5));
    for (int i = 0; i < n; ++i) {
      core.insert(core.begin() + rng.Below(core.size() + 1), filler());
    }
    return core;
  };
  // Places `block` at a random position in a filler context; blocks stay
  // contiguous and keep their relative order.
  auto compose = [&](const std::vector<std::vector<std::string>> &blocks) {
    std::vector<std::string> out;
    for (const auto &b : blocks) {
      int gap = static_cast<int>(rng.Below(3));
      for (int i = 0; i < gap; ++i) out.push_back(filler());
      out.insert(out.end(), b.begin(), b.end());
    }
    int tail = 1 + static_cast<int>(rng.Below(3));
    for (int i = 0; i < tail; ++i) out.push_back(filler());
    return out;
  };

  // Exact per-label counts, remainder to nonhate.
  std::vector<Label> labels;
  for (int c = 0; c < kNumLabels - 1; ++c) {
    size_t n = static_cast<size_t>(
        std::floor(options.label_shares[c] * options.num_docs));
    labels.insert(labels.end(), std::max<size_t>(n, 1), LabelFromIndex(c));
  }
  while (labels.size() < options.num_docs) labels.push_back(Label::kNonhate);
  rng.Shuffle(labels);

  const UtcTime window_start = UtcTime{std::chrono::sys_days{
      std::chrono::year{2014} / std::chrono::August / 1}};
  const int64_t window_secs = 7 * 365 * 86400LL;
  auto timestamp = [&] {
    return window_start + std::chrono::seconds(rng.Below(window_secs));
  };

  auto make_tokens = [&](Label label) {
    if (label == Label::kNonhate) {
      std::vector<std::vector<std::string>> blocks = {
          {corpus.negation, keyword(rng.Below(3))}};
      if (rng.Bernoulli(0.3)) blocks.push_back({corpus.negation, keyword(rng.Below(3))});
      if (rng.Bernoulli(0.2)) blocks.push_back({corpus.marker});
      return compose(blocks);
    }
    const int c = LabelIndex(label);
    if (rng.Bernoulli(0.6)) {
      std::vector<std::vector<std::string>> blocks = {{keyword(c)}};
      if (rng.Bernoulli(0.5)) blocks.push_back({corpus.negation});
      return compose(blocks);
    }
    int d = (c + 1 + static_cast<int>(rng.Below(2))) % 3;
    std::vector<std::string> target = {corpus.marker, keyword(c)};
    std::vector<std::string> other = {keyword(d)};
    return rng.Bernoulli(0.5) ? compose({other, target})
                              : compose({target, other});
  };

  std::vector<ingest::RawPost> all;
  std::set<std::string> texts;
  for (size_t i = 0; i < labels.size(); ++i) {
    const Label label = labels[i];
    std::vector<std::string> tokens;
    do {
      tokens = make_tokens(label);
    } while (!texts.insert(Join(tokens)).second);
    char id[32];
    std::snprintf(id, sizeof(id), "syn%05zu", i);
    ingest::RawPost p;
    p.id = id;
    p.source = rng.Bernoulli(0.5) ? ingest::Source::kTwitter
                                  : ingest::Source::kFacebook;
    p.author_hash = HashAuthor(ingest::SourceName(p.source),
                               "user" + std::to_string(rng.Below(300)));
    p.text = Join(tokens) + " ።";
    p.created_at = timestamp();
    corpus.labels.emplace_back(p.id, label);
    all.push_back(std::move(p));
  }

  // Noise: no labels; every record is dropped by ingest or the filters.
  auto noise = [&](const std::string &prefix, size_t n, auto make_text,
                   bool in_window) {
    for (size_t i = 0; i < n; ++i) {
      ingest::RawPost p;
      p.id = prefix + std::to_string(i);
      p.source = ingest::Source::kTwitter;
      p.author_hash = HashAuthor("twitter", "noise" + std::to_string(i));
      p.text = make_text();
      p.created_at = in_window ? timestamp()
                               : window_start - std::chrono::hours(24 * (30 + i));
      all.push_back(std::move(p));
    }
  };
  noise("latin", 40, [&] {
    std::vector<std::string> t;
    for (int k = 0; k < 6; ++k) t.push_back(kLatin[rng.Below(std::size(kLatin))]);
    return Join(t);
  }, true);
  noise("plain", 20, [&] { return Join(with_fillers({filler()})); }, true);
  noise("early", 10, [&] { return Join(with_fillers({keyword(0)})); }, false);
  // Later copies of labeled texts; consolidation keeps the originals.
  for (size_t i = 0; i < 30 && i < labels.size(); ++i) {
    ingest::RawPost p = all[rng.Below(labels.size())];
    p.id = "dup" + std::to_string(i);
    p.created_at = window_start + std::chrono::seconds(window_secs + 86400);
    all.push_back(std::move(p));
  }

  for (auto &p : all) {
    (p.source == ingest::Source::kTwitter ? corpus.twitter : corpus.facebook)
        .push_back(std::move(p));
  }
  std::sort(corpus.labels.begin(), corpus.labels.end());
  return corpus;
}

void WriteSynthetic(const SyntheticCorpus &corpus, const std::string &dir) {
  std::filesystem::create_directories(dir);
  auto posts = [](const std::vector<ingest::RawPost> &v) {
    std::string out;
    for (const auto &p : v) out += ingest::SerializeRawPost(p, false) + "\n";
    return out;
  };
  WriteFileAtomic(dir + "/posts_twitter.jsonl", posts(corpus.twitter));
  WriteFileAtomic(dir + "/posts_facebook.jsonl", posts(corpus.facebook));

  std::string labels = "# id\tlabel\n";
  for (const auto &[id, l] : corpus.labels) {
    labels += id + "\t" + std::string(LabelName(l)) + "\n";
  }
  WriteFileAtomic(dir + "/labels.tsv", labels);

  static const char *kThemes[] = {"hate", "religion", "gender"};
  std::string filter = "# surface\ttheme\n";
  std::string rule = "# surface\tlabel\tweight\n";
  for (int c = 0; c < 3; ++c) {
    for (const auto &kw : corpus.keywords[c]) {
      filter += kw + "\t" + kThemes[c] + "\n";
      rule += kw + "\t" + std::string(kLabelNames[c]) + "\t1\n";
    }
  }
  WriteFileAtomic(dir + "/filter_lexicon.tsv", filter);
  WriteFileAtomic(dir + "/rule_lexicon.tsv", rule);
}

}  // namespace amhs::pipeline
