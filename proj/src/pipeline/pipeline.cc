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

#include "pipeline/pipeline.h"

#include <filesystem>
#include <map>
#include <set>

#include "annotation/http_server.h"
#include "annotation/service.h"
#include "balance/smote.h"
#include "common/error.h"
#include "common/fileutil.h"
#include "common/hash.h"
#include "common/log.h"
#include "common/version.h"
#include "eval/report.h"
#include "eval/split.h"
#include "features/embeddings.h"
#include "features/sequences.h"
#include "features/tfidf.h"
#include "features/vocabulary.h"
#include "ingest/filters.h"
#include "ingest/lexicon.h"
#include "ingest/source.h"
#include "models/rule_model.h"

namespace amhs::pipeline {

using nlohmann::ordered_json;
namespace fs = std::filesystem;
using models::ModelType;

namespace {

// Output directory for one stage run. Files go to a sibling staging
// directory that replaces the final one on Commit(); an uncommitted stage
// leaves nothing behind.
class Stage {
 public:
  Stage(const PipelineConfig &config, const std::string &name)
      : config_(config),
        name_(name),
        final_(fs::path(config.out_dir) / name),
        partial_(final_.string() + ".partial") {
    fs::remove_all(partial_);
    fs::create_directories(partial_);
  }
  ~Stage() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(partial_, ec);
    }
  }

  void Input(const std::string &path) {
    if (!fs::exists(path)) Fail(ErrorCode::kIo, "missing input " + path);
    inputs_.push_back({{"path", path}, {"sha256", Sha256File(path)}});
  }

  void Write(const std::string &name, const std::string &content) {
    WriteFileAtomic((partial_ / name).string(), content);
    outputs_.push_back({{"path", name}, {"sha256", Sha256Hex(content)}});
  }

  std::string FinalPath(const std::string &name) const {
    return (final_ / name).string();
  }

  void Commit() {
    std::string config_text = config_.resolved.dump(2) + "\n";
    WriteFileAtomic((partial_ / "config.json").string(), config_text);
    ordered_json manifest;
    manifest["tool"] = "amhs";
    manifest["version"] = kVersion;
    manifest["stage"] = name_;
    manifest["config_sha256"] = Sha256Hex(config_text);
    manifest["inputs"] = inputs_;
    manifest["outputs"] = outputs_;
    WriteFileAtomic((partial_ / "manifest.json").string(),
                    manifest.dump(2) + "\n");
    fs::remove_all(final_);
    fs::create_directories(final_.parent_path());
    fs::rename(partial_, final_);
    committed_ = true;
  }

 private:
  const PipelineConfig &config_;
  std::string name_;
  fs::path final_;
  fs::path partial_;
  ordered_json inputs_ = ordered_json::array();
  ordered_json outputs_ = ordered_json::array();
  bool committed_ = false;
};

textnorm::Normalizer MakeNormalizer(const PipelineConfig &c) {
  if (c.normalization_table.empty()) return textnorm::Normalizer();
  return textnorm::Normalizer(textnorm::NormalizationTable::FromFile(
      c.normalization_table, c.normalization_extend));
}

std::vector<ingest::RawPost> ReadPosts(const std::string &path,
                                       bool allow_themes) {
  std::vector<ingest::RawPost> posts;
  int line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty()) continue;
    std::string why;
    auto p = ingest::ParseRawPost(line, &why, allow_themes);
    if (!p) {
      Fail(ErrorCode::kSchema,
           path + ":" + std::to_string(line_no) + ": " + why);
    }
    posts.push_back(std::move(*p));
  }
  return posts;
}

std::string Jsonl(const std::vector<ingest::RawPost> &posts, bool themes) {
  std::string out;
  for (const auto &p : posts) out += ingest::SerializeRawPost(p, themes) + "\n";
  return out;
}

ordered_json Counts(const std::vector<Label> &labels) {
  auto counts = balance::CountLabels(labels);
  ordered_json j = ordered_json::object();
  for (int c = 0; c < kNumLabels; ++c) j[std::string(kLabelNames[c])] = counts[c];
  return j;
}

std::string GoldLine(const std::string &id, const std::string &text,
                     const std::vector<std::string> &tokens, Label label) {
  ordered_json j;
  j["id"] = id;
  j["text"] = text;
  j["tokens"] = tokens;
  j["label"] = std::string(LabelName(label));
  return j.dump() + "\n";
}

std::map<std::string, Label> ReadLabels(const std::string &path) {
  std::map<std::string, Label> labels;
  int line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    auto where = path + ":" + std::to_string(line_no);
    if (tab == std::string::npos) Fail(ErrorCode::kParse, where + ": expected id<TAB>label");
    auto label = ParseLabel(line.substr(tab + 1));
    if (!label) Fail(ErrorCode::kParse, where + ": unknown label");
    if (!labels.emplace(line.substr(0, tab), *label).second) {
      Fail(ErrorCode::kParse, where + ": duplicate id");
    }
  }
  return labels;
}

template <typename T>
std::vector<T> Select(const std::vector<T> &v, const std::vector<size_t> &idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(v[i]);
  return out;
}

struct Prepared {
  GoldSet gold;
  eval::SplitIndices split;
  features::Vocabulary vocab;
};

Prepared Prepare(const PipelineConfig &c) {
  Prepared p;
  p.gold = ReadGold(c.gold);
  if (p.gold.docs.empty()) Fail(ErrorCode::kInvalidArgument, "gold file is empty");
  p.split = eval::StratifiedSplit(p.gold.labels, c.split, c.split_seed);
  auto train_docs = Select(p.gold.docs, p.split.train);
  p.vocab = features::Vocabulary::Build(train_docs, c.min_df);
  return p;
}

}  // namespace

GoldSet ReadGold(const std::string &path) {
  GoldSet g;
  std::set<std::string> ids;
  int line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.size() != 4 ||
        !j.contains("id") || !j.contains("text") || !j.contains("tokens") ||
        !j.contains("label")) {
      Fail(ErrorCode::kSchema,
           where + ": expected an object with id, text, tokens and label");
    }
    textnorm::CleanDocument d;
    std::optional<Label> label;
    try {
      d.id = j["id"].get<std::string>();
      d.raw_text = j["text"].get<std::string>();
      d.tokens = j["tokens"].get<std::vector<std::string>>();
      label = ParseLabel(j["label"].get<std::string>());
    } catch (const ordered_json::exception &e) {
      Fail(ErrorCode::kSchema, where + ": " + e.what());
    }
    if (!label) Fail(ErrorCode::kSchema, where + ": unknown label");
    if (!ids.insert(d.id).second) Fail(ErrorCode::kSchema, where + ": duplicate id");
    for (const auto &t : d.tokens) {
      if (!d.norm_text.empty()) d.norm_text += ' ';
      d.norm_text += t;
    }
    g.docs.push_back(std::move(d));
    g.labels.push_back(*label);
  }
  return g;
}

Pipeline::Pipeline(PipelineConfig config)
    : config_(std::move(config)), normalizer_(MakeNormalizer(config_)) {}

std::string Pipeline::StagePath(const std::string &stage) const {
  return (fs::path(config_.out_dir) / stage).string();
}

std::string Pipeline::ModelPath(ModelType type) const {
  return (fs::path(StagePath("train")) / models::ModelTypeName(type) /
          "model.json")
      .string();
}

ordered_json Pipeline::Ingest() {
  if (config_.sources.empty()) {
    Fail(ErrorCode::kConfig, "ingest.sources is empty");
  }
  Stage stage(config_, "ingest");
  std::vector<std::shared_ptr<ingest::SourceAdapter>> adapters;
  for (const auto &s : config_.sources) {
    stage.Input(s.path);
    adapters.push_back(std::make_shared<ingest::FileAdapter>(s.path));
  }
  ingest::FetchOptions options;
  options.max_attempts = config_.max_attempts;
  options.retry_backoff = std::chrono::milliseconds(config_.retry_backoff_ms);
  std::vector<ingest::FetchStats> stats;
  auto streams = ingest::FetchConcurrently(adapters, config_.query, &stats, options);
  size_t fetched = 0;
  ordered_json sources = ordered_json::array();
  for (size_t i = 0; i < adapters.size(); ++i) {
    fetched += streams[i].size();
    sources.push_back({{"path", config_.sources[i].path},
                       {"yielded", stats[i].yielded},
                       {"malformed_skipped", stats[i].malformed_skipped},
                       {"out_of_window", stats[i].out_of_window}});
  }
  auto posts = ingest::Consolidate(streams, normalizer_);
  ordered_json summary;
  summary["stage"] = "ingest";
  summary["sources"] = sources;
  summary["fetched"] = fetched;
  summary["duplicates_removed"] = fetched - posts.size();
  summary["posts"] = posts.size();
  stage.Write("posts.jsonl", Jsonl(posts, false));
  stage.Write("stats.json", summary.dump(2) + "\n");
  stage.Commit();
  return summary;
}

ordered_json Pipeline::Filter() {
  if (config_.filter_lexicon.empty()) {
    Fail(ErrorCode::kConfig, "filter.lexicon is not set");
  }
  Stage stage(config_, "filter");
  const std::string input = (fs::path(StagePath("ingest")) / "posts.jsonl").string();
  stage.Input(input);
  stage.Input(config_.filter_lexicon);
  auto posts = ReadPosts(input, false);
  auto lexicon = ingest::KeywordLexicon::FromFile(config_.filter_lexicon, normalizer_);
  auto language = ingest::LanguageFilter(posts, config_.language_threshold,
                                         ingest::EthiopicFractionDetector(),
                                         normalizer_);
  auto keyword = ingest::KeywordFilter(language, lexicon, normalizer_);
  ordered_json themes = ordered_json::object();
  for (const auto &[theme, n] : keyword.theme_counts) {
    themes[std::string(ingest::ThemeName(theme))] = n;
  }
  ordered_json summary;
  summary["stage"] = "filter";
  summary["input"] = posts.size();
  summary["after_language"] = language.size();
  summary["after_keywords"] = keyword.kept.size();
  summary["theme_counts"] = themes;
  stage.Write("pool.jsonl", Jsonl(keyword.kept, true));
  stage.Write("stats.json", summary.dump(2) + "\n");
  stage.Commit();
  return summary;
}

ordered_json Pipeline::ExportGold(const std::string &dataset_id,
                                  const std::string &labels_path) {
  if (dataset_id.empty() == labels_path.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "export-gold needs exactly one of a dataset id or a labels file");
  }
  Stage stage(config_, "gold");
  std::string gold;
  ordered_json summary;
  summary["stage"] = "export-gold";
  if (!dataset_id.empty()) {
    if (!fs::exists(config_.annotation_store)) {
      Fail(ErrorCode::kNotFound, "annotation store not found: " + config_.annotation_store);
    }
    annotation::AnnotationService service(
        annotation::OpenSqliteStore(config_.annotation_store), {});
    gold = service.ExportGold(dataset_id);
    summary["dataset_id"] = dataset_id;
  } else {
    const std::string pool = (fs::path(StagePath("filter")) / "pool.jsonl").string();
    stage.Input(pool);
    stage.Input(labels_path);
    auto labels = ReadLabels(labels_path);
    auto posts = ReadPosts(pool, true);
    std::sort(posts.begin(), posts.end(),
              [](const auto &a, const auto &b) { return a.id < b.id; });
    size_t unlabeled = 0;
    std::set<std::string> matched;
    for (const auto &p : posts) {
      auto it = labels.find(p.id);
      if (it == labels.end()) {
        ++unlabeled;
        continue;
      }
      matched.insert(p.id);
      auto doc = normalizer_.Clean(p.id, p.text);
      gold += GoldLine(p.id, p.text, doc.tokens, it->second);
    }
    summary["pool"] = posts.size();
    summary["unlabeled_in_pool"] = unlabeled;
    summary["labels_not_in_pool"] = labels.size() - matched.size();
  }
  summary["records"] = std::count(gold.begin(), gold.end(), '\n');
  stage.Write("gold.jsonl", gold);
  stage.Commit();
  return summary;
}

ordered_json Pipeline::Train(ModelType type) {
  const std::string name = models::ModelTypeName(type);
  Stage stage(config_, "train/" + name);
  stage.Input(config_.gold);
  Prepared data = Prepare(config_);
  auto train_docs = Select(data.gold.docs, data.split.train);
  auto train_y = Select(data.gold.labels, data.split.train);

  ordered_json summary;
  summary["stage"] = "train";
  summary["model"] = name;
  summary["split_fingerprint"] = data.split.Fingerprint();
  summary["train_size"] = data.split.train.size();
  summary["val_size"] = data.split.val.size();
  summary["test_size"] = data.split.test.size();
  summary["vocab_size"] = data.vocab.num_terms();
  summary["vocab_hash"] = data.vocab.hash();
  summary["class_counts"] = Counts(train_y);

  std::optional<models::Classifier> model;
  if (type == ModelType::kRule) {
    if (config_.rule_lexicon.empty()) {
      Fail(ErrorCode::kConfig, "models.rule.lexicon is not set");
    }
    stage.Input(config_.rule_lexicon);
    auto rule = models::RuleModel::FromFile(config_.rule_lexicon, normalizer_);
    rule.set_precedence(config_.precedence);
    model = models::Classifier::FromRule(std::move(rule), data.vocab.hash());
    summary["balance"] = "none";
  } else if (type == ModelType::kLinear) {
    auto tfidf = features::Tfidf(train_docs, data.vocab);
    std::vector<features::SparseRow> x = tfidf.rows;
    std::vector<Label> y = train_y;
    summary["balance"] = config_.linear_balance
                             ? balance::ModeName(*config_.linear_balance)
                             : "none";
    if (config_.linear_balance) {
      std::vector<balance::Vector> dense;
      for (size_t r = 0; r < tfidf.rows.size(); ++r) dense.push_back(tfidf.DenseRow(r));
      auto bal = balance::BalanceDataset(dense, y, *config_.linear_balance,
                                         config_.balance_seed, config_.smote_k);
      x.clear();
      for (const auto &v : bal.x) {
        features::SparseRow row;
        for (size_t j = 0; j < v.size(); ++j) {
          if (v[j] != 0.0) row.emplace_back(static_cast<int>(j), v[j]);
        }
        x.push_back(std::move(row));
      }
      y = bal.y;
    }
    summary["balanced_counts"] = Counts(y);
    models::LinearTrace trace;
    auto linear = models::TrainLinear(x, y, tfidf.cols, config_.linear, &trace);
    summary["final_loss"] = trace.loss.empty() ? 0.0 : trace.loss.back();
    model = models::Classifier::FromLinear(std::move(linear), data.vocab);
  } else {
    const size_t max_len = config_.sbilstm.max_len;
    auto seqs = features::ToSequences(train_docs, data.vocab, max_len);
    std::vector<Label> y = train_y;
    summary["balance"] = config_.sbilstm_balance
                             ? balance::ModeName(*config_.sbilstm_balance)
                             : "none";
    if (config_.sbilstm_balance) {
      for (size_t i : balance::DuplicateIndices(train_y, config_.balance_seed)) {
        auto row = seqs.Row(i);
        std::vector<int32_t> copy(row.begin(), row.end());
        seqs.ids.insert(seqs.ids.end(), copy.begin(), copy.end());
        seqs.lengths.push_back(seqs.lengths[i]);
        y.push_back(train_y[i]);
      }
    }
    summary["balanced_counts"] = Counts(y);
    auto val_docs = Select(data.gold.docs, data.split.val);
    auto val_y = Select(data.gold.labels, data.split.val);
    auto val_seqs = features::ToSequences(val_docs, data.vocab, max_len);
    models::SBiLstmData train{&seqs, &y};
    models::SBiLstmData val{&val_seqs, &val_y};
    std::optional<features::EmbeddingTable> table;
    if (config_.embeddings_enabled && !config_.embeddings_pretrained.empty()) {
      stage.Input(config_.embeddings_pretrained);
      table = features::EmbeddingTable::Load(config_.embeddings_pretrained,
                                             config_.embeddings.min_n,
                                             config_.embeddings.max_n);
      if (table->dim() != config_.sbilstm.embedding_dim) {
        Fail(ErrorCode::kConfig,
             "features.embeddings.pretrained has dimension " +
                 std::to_string(table->dim()) + ", models.sbilstm.embedding_dim is " +
                 std::to_string(config_.sbilstm.embedding_dim));
      }
    } else if (config_.embeddings_enabled) {
      table = features::TrainEmbeddings(train_docs, config_.embeddings);
    }
    std::vector<models::EpochStats> history;
    auto net = models::TrainSBiLstm(train, val_docs.empty() ? nullptr : &val,
                                    config_.sbilstm, data.vocab.size(),
                                    &data.vocab, table ? &*table : nullptr,
                                    &history);
    ordered_json h = ordered_json::array();
    for (const auto &e : history) {
      h.push_back({{"epoch", e.epoch},
                   {"train_loss", e.train_loss},
                   {"val_macro_f1", e.val_macro_f1}});
    }
    summary["history"] = h;
    model = models::Classifier::FromSBiLstm(std::move(net), data.vocab);
  }
  stage.Write("model.json", model->ToJson().dump() + "\n");
  stage.Write("training.json", summary.dump(2) + "\n");
  stage.Commit();
  summary.erase("history");
  summary["model_path"] = stage.FinalPath("model.json");
  return summary;
}

ordered_json Pipeline::Evaluate(ModelType type, const std::string &model_path) {
  const std::string name = models::ModelTypeName(type);
  const std::string path = model_path.empty() ? ModelPath(type) : model_path;
  Stage stage(config_, "evaluate/" + name);
  stage.Input(config_.gold);
  stage.Input(path);
  Prepared data = Prepare(config_);
  auto model = models::Classifier::Load(path, data.vocab.hash());
  if (model.type() != type) {
    Fail(ErrorCode::kConflict, path + " holds a " +
                                   models::ModelTypeName(model.type()) +
                                   " model, not " + name);
  }
  auto report = eval::Evaluate(model, name, Select(data.gold.docs, data.split.test),
                               Select(data.gold.labels, data.split.test),
                               data.split.Fingerprint(), config_.split_seed,
                               config_.averaging);
  stage.Write("report.json", eval::ToJson(report).dump(2) + "\n");
  stage.Write("report.txt", eval::ToText(report));
  stage.Commit();
  ordered_json summary;
  summary["stage"] = "evaluate";
  summary["model"] = name;
  summary["f1"] = report.metrics.F1(config_.averaging);
  summary["report"] = stage.FinalPath("report.json");
  return summary;
}

ordered_json Pipeline::Compare() {
  if (config_.compare_models.empty()) {
    Fail(ErrorCode::kConfig, "evaluate.models is empty");
  }
  Stage stage(config_, "compare");
  stage.Input(config_.gold);
  Prepared data = Prepare(config_);
  std::vector<models::Classifier> loaded;
  loaded.reserve(config_.compare_models.size());
  for (const auto &m : config_.compare_models) {
    auto path = ModelPath(models::ParseModelType(m));
    stage.Input(path);
    loaded.push_back(models::Classifier::Load(path, data.vocab.hash()));
  }
  std::vector<eval::NamedModel> named;
  for (size_t i = 0; i < loaded.size(); ++i) {
    named.push_back({config_.compare_models[i], &loaded[i]});
  }
  auto cmp = eval::Compare(named, Select(data.gold.docs, data.split.test),
                           Select(data.gold.labels, data.split.test),
                           data.split.Fingerprint(), config_.split_seed,
                           config_.averaging);
  stage.Write("comparison.json", eval::ToJson(cmp).dump(2) + "\n");
  stage.Write("comparison.txt", eval::ToText(cmp));
  stage.Commit();
  ordered_json summary;
  summary["stage"] = "compare";
  ordered_json scores = ordered_json::object();
  for (const auto &r : cmp.rows) scores[r.model_id] = r.metrics.F1(config_.averaging);
  summary["f1"] = scores;
  summary["report"] = stage.FinalPath("comparison.json");
  return summary;
}

void Pipeline::Serve(const std::string &import_path, int port_override) {
  if (config_.annotators.empty()) {
    Fail(ErrorCode::kConfig, "annotation.annotators is not set");
  }
  auto registry = annotation::AnnotatorRegistry::FromFile(config_.annotators);
  fs::create_directories(fs::path(config_.annotation_store).parent_path());
  annotation::ServiceOptions options;
  options.lease_timeout = std::chrono::minutes(config_.lease_timeout_minutes);
  options.normalizer = &normalizer_;
  annotation::AnnotationService service(
      annotation::OpenSqliteStore(config_.annotation_store), std::move(registry),
      options);
  if (!import_path.empty()) {
    try {
      auto r = service.ImportDataset(ReadFile(import_path),
                                     fs::path(import_path).filename().string(),
                                     config_.required_votes);
      Log().info("imported {} tasks as dataset {}", r.num_tasks, r.dataset_id);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kConflict) throw;
      Log().info("{} was imported before", import_path);
    }
  }
  for (const auto &d : service.ListDatasets()) {
    Log().info("dataset {} ({} items, {} votes each)", d.id, d.num_items,
               d.required_votes);
  }
  annotation::HttpServer server(service);
  int port = server.Bind(config_.host, port_override >= 0 ? port_override : config_.port);
  Log().info("annotation service listening on {}:{}", config_.host, port);
  server.Listen();
}

std::vector<ordered_json> Pipeline::Predict(const std::string &model_path,
                                            const std::vector<std::string> &texts) {
  std::string path = model_path.empty() ? config_.predict_model : model_path;
  if (path.empty()) {
    Fail(ErrorCode::kConfig, "no model given: pass a model path or set predict.model");
  }
  auto model = models::Classifier::Load(path);
  std::vector<ordered_json> out;
  for (size_t i = 0; i < texts.size(); ++i) {
    auto doc = normalizer_.Clean(std::to_string(i), texts[i]);
    auto p = model.Predict(doc);
    ordered_json dist = ordered_json::object();
    for (int c = 0; c < kNumLabels; ++c) {
      dist[std::string(kLabelNames[c])] = p.distribution[c];
    }
    out.push_back({{"label", std::string(LabelName(p.label))}, {"distribution", dist}});
  }
  return out;
}

}  // namespace amhs::pipeline
