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

// Seeded generator for a synthetic Ethiopic-script corpus with four classes.
//
// Every labeled document contains at least one class keyword, so the
// keyword filter keeps all of them. Class membership depends on context:
//   racial/religious/gender  keyword of that class, optionally followed
//                            later by the negation word, or two keywords
//                            of different classes with the target marker
//                            directly before the labeled one
//   nonhate                  negation word directly before a keyword
// A keyword lexicon alone therefore cannot separate the classes, and a bag
// of words only partly can.
//
// Noise records (Latin script, duplicates, out-of-window dates, keyword-free
// Ethiopic text) are added on top and carry no label.

#ifndef AMHS_PIPELINE_SYNTHETIC_H_
#define AMHS_PIPELINE_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "common/label.h"
#include "ingest/raw_post.h"

namespace amhs::pipeline {

struct SyntheticOptions {
  uint64_t seed = 1;
  size_t num_docs = 1200;
  // Share of each label among the labeled documents.
  std::array<double, kNumLabels> label_shares = {0.25, 0.20, 0.15, 0.40};
};

struct SyntheticCorpus {
  // Two platform streams, already interleaved with noise.
  std::vector<ingest::RawPost> twitter;
  std::vector<ingest::RawPost> facebook;
  std::vector<std::pair<std::string, Label>> labels;  // sorted by id
  std::array<std::vector<std::string>, 3> keywords;   // per hate class
  std::string negation;
  std::string marker;
};

SyntheticCorpus GenerateSynthetic(const SyntheticOptions &options);

// Writes posts_twitter.jsonl, posts_facebook.jsonl, labels.tsv,
// filter_lexicon.tsv and rule_lexicon.tsv into `dir`.
void WriteSynthetic(const SyntheticCorpus &corpus, const std::string &dir);

}  // namespace amhs::pipeline

#endif  // AMHS_PIPELINE_SYNTHETIC_H_
