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

#include "pipeline/config.h"

#include <filesystem>
#include <set>

#include "common/error.h"
#include "common/fileutil.h"
#include "common/rng.h"
#include "common/timeutil.h"
#include "models/classifier.h"

namespace amhs::pipeline {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// Leaf type tags for the schema walk.
constexpr const char *kInt = "integer";
constexpr const char *kSeed = "seed";  // non-negative integer or null
constexpr const char *kNumber = "number";
constexpr const char *kBool = "boolean";
constexpr const char *kString = "string";
constexpr const char *kPath = "path";  // string or null
constexpr const char *kStrings = "array of strings";
constexpr const char *kSources = "array of sources";

// Salts for seeds derived from the top-level seed.
enum SeedSalt : uint64_t {
  kSplitSalt = 101,
  kBalanceSalt,
  kEmbeddingSalt,
  kLinearSalt,
  kSBiLstmSalt,
};

ordered_json Schema() {
  return {
      {"seed", kInt},
      {"out_dir", kPath},
      {"normalization", {{"table", kPath}, {"extend_default", kBool}}},
      {"ingest",
       {{"sources", kSources},
        {"date_from", kString},
        {"date_to", kString},
        {"max_items", kInt},
        {"keywords", kStrings},
        {"max_attempts", kInt},
        {"retry_backoff_ms", kInt}}},
      {"filter", {{"language_threshold", kNumber}, {"lexicon", kPath}}},
      {"annotation",
       {{"store", kPath},
        {"annotators", kPath},
        {"host", kString},
        {"port", kInt},
        {"lease_timeout_minutes", kInt},
        {"required_votes", kInt}}},
      {"data", {{"gold", kPath}}},
      {"split",
       {{"train", kNumber}, {"val", kNumber}, {"test", kNumber}, {"seed", kSeed}}},
      {"balance",
       {{"linear", kString}, {"sbilstm", kString}, {"k", kInt}, {"seed", kSeed}}},
      {"features",
       {{"min_df", kInt},
        {"embeddings",
         {{"enabled", kBool},
          {"pretrained", kPath},
          {"epochs", kInt},
          {"min_n", kInt},
          {"max_n", kInt},
          {"negatives", kInt},
          {"window", kInt},
          {"min_count", kInt},
          {"learning_rate", kNumber},
          {"seed", kSeed}}}}},
      {"models",
       {{"rule", {{"lexicon", kPath}, {"precedence", kStrings}}},
        {"linear",
         {{"learning_rate", kNumber},
          {"l2", kNumber},
          {"epochs", kInt},
          {"init_scale", kNumber},
          {"seed", kSeed}}},
        {"sbilstm",
         {{"embedding_dim", kInt},
          {"hidden", kInt},
          {"layers", kInt},
          {"dense", kInt},
          {"dropout", kNumber},
          {"max_len", kInt},
          {"batch_size", kInt},
          {"epochs", kInt},
          {"learning_rate", kNumber},
          {"clip_norm", kNumber},
          {"patience", kInt},
          {"forget_bias", kNumber},
          {"seed", kSeed}}}}},
      {"evaluate", {{"averaging", kString}, {"models", kStrings}}},
      {"predict", {{"model", kPath}}},
  };
}

void CheckLeaf(const std::string &where, const std::string &type,
               const ordered_json &v) {
  auto bad = [&] {
    Fail(ErrorCode::kConfig, where + ": expected " + type + ", got " +
                                 std::string(v.type_name()));
  };
  if (type == kInt) {
    if (!v.is_number_integer()) bad();
  } else if (type == kSeed) {
    if (!v.is_null() && !v.is_number_unsigned() &&
        !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
      bad();
    }
  } else if (type == kNumber) {
    if (!v.is_number()) bad();
  } else if (type == kBool) {
    if (!v.is_boolean()) bad();
  } else if (type == kString) {
    if (!v.is_string()) bad();
  } else if (type == kPath) {
    if (!v.is_null() && !v.is_string()) bad();
  } else if (type == kStrings) {
    if (!v.is_array()) bad();
    for (const auto &e : v) {
      if (!e.is_string()) bad();
    }
  } else if (type == kSources) {
    if (!v.is_array()) bad();
    for (const auto &e : v) {
      if (!e.is_object()) bad();
      for (const auto &[k, x] : e.items()) {
        if (k != "adapter" && k != "path") {
          Fail(ErrorCode::kConfig, where + ": unknown source key \"" + k + "\"");
        }
        if (!x.is_string()) {
          Fail(ErrorCode::kConfig, where + "." + k + ": expected string");
        }
      }
    }
  }
}

// Overlays `user` onto `base`, rejecting keys absent from `schema`.
void Merge(const ordered_json &schema, const ordered_json &user,
           ordered_json &base, const std::string &prefix) {
  if (!user.is_object()) {
    Fail(ErrorCode::kConfig,
         (prefix.empty() ? std::string("config") : prefix) + ": expected object");
  }
  for (const auto &[key, value] : user.items()) {
    const std::string where = prefix.empty() ? key : prefix + "." + key;
    if (!schema.contains(key)) {
      Fail(ErrorCode::kConfig, "unknown config key \"" + where + "\"");
    }
    const auto &s = schema[key];
    if (s.is_object()) {
      Merge(s, value, base[key], where);
    } else {
      CheckLeaf(where, s.get<std::string>(), value);
      base[key] = value;
    }
  }
}

std::string ResolvePath(const ordered_json &v, const std::string &base_dir) {
  if (v.is_null()) return "";
  fs::path p(v.get<std::string>());
  if (p.empty()) return "";
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

template <typename T>
T Positive(const ordered_json &v, const std::string &where) {
  T x = v.get<T>();
  if (!(x > 0)) Fail(ErrorCode::kConfig, where + " must be positive");
  return x;
}

std::optional<balance::Mode> ParseBalance(const std::string &name,
                                          const std::string &where) {
  if (name == "none") return std::nullopt;
  try {
    return balance::ParseMode(name);
  } catch (const Error &) {
    Fail(ErrorCode::kConfig,
         where + ": expected smote, duplicate or none, got \"" + name + "\"");
  }
}

}  // namespace

ordered_json DefaultConfigJson() {
  models::SBiLstmConfig s;
  features::EmbeddingConfig e;
  models::LinearConfig l;
  return {
      {"seed", 13},
      {"out_dir", "out"},
      {"normalization", {{"table", nullptr}, {"extend_default", true}}},
      {"ingest",
       {{"sources", ordered_json::array()},
        {"date_from", "2014-08-01"},
        {"date_to", "2022-06-30"},
        {"max_items", 2000000},
        {"keywords", ordered_json::array()},
        {"max_attempts", 3},
        {"retry_backoff_ms", 200}}},
      {"filter", {{"language_threshold", 0.6}, {"lexicon", nullptr}}},
      {"annotation",
       {{"store", "annotation.sqlite"},
        {"annotators", nullptr},
        {"host", "127.0.0.1"},
        {"port", 8080},
        {"lease_timeout_minutes", 30},
        {"required_votes", 3}}},
      {"data", {{"gold", nullptr}}},
      {"split", {{"train", 0.8}, {"val", 0.1}, {"test", 0.1}, {"seed", nullptr}}},
      {"balance",
       {{"linear", "smote"}, {"sbilstm", "duplicate"}, {"k", 5}, {"seed", nullptr}}},
      {"features",
       {{"min_df", 1},
        {"embeddings",
         {{"enabled", true},
          {"pretrained", nullptr},
          {"epochs", e.epochs},
          {"min_n", e.min_n},
          {"max_n", e.max_n},
          {"negatives", e.negatives},
          {"window", e.window},
          {"min_count", e.min_count},
          {"learning_rate", e.learning_rate},
          {"seed", nullptr}}}}},
      {"models",
       {{"rule",
         {{"lexicon", nullptr},
          {"precedence", {"racial", "religious", "gender"}}}},
        {"linear",
         {{"learning_rate", l.learning_rate},
          {"l2", l.l2},
          {"epochs", l.epochs},
          {"init_scale", l.init_scale},
          {"seed", nullptr}}},
        {"sbilstm",
         {{"embedding_dim", s.embedding_dim},
          {"hidden", s.hidden},
          {"layers", s.layers},
          {"dense", s.dense},
          {"dropout", s.dropout},
          {"max_len", s.max_len},
          {"batch_size", s.batch_size},
          {"epochs", s.epochs},
          {"learning_rate", s.learning_rate},
          {"clip_norm", s.clip_norm},
          {"patience", s.patience},
          {"forget_bias", s.forget_bias},
          {"seed", nullptr}}}}},
      {"evaluate",
       {{"averaging", "macro"}, {"models", {"rule", "linear", "sbilstm"}}}},
      {"predict", {{"model", nullptr}}},
  };
}

PipelineConfig LoadConfig(const std::string &path,
                          const ConfigOverrides &overrides) {
  if (path.empty()) {
    return ResolveConfig(ordered_json::object(), fs::current_path().string(),
                         overrides);
  }
  if (!fs::exists(path)) Fail(ErrorCode::kConfig, "config file not found: " + path);
  ordered_json user;
  try {
    user = ordered_json::parse(ReadFile(path));
  } catch (const ordered_json::exception &e) {
    Fail(ErrorCode::kConfig, path + ": " + e.what());
  }
  auto base = fs::absolute(path).parent_path().lexically_normal().string();
  return ResolveConfig(user, base, overrides);
}

PipelineConfig ResolveConfig(const ordered_json &user,
                             const std::string &base_dir,
                             const ConfigOverrides &overrides) {
  ordered_json r = DefaultConfigJson();
  Merge(Schema(), user, r, "");
  if (r["seed"].get<int64_t>() < 0) Fail(ErrorCode::kConfig, "seed must be >= 0");
  if (overrides.seed) r["seed"] = *overrides.seed;
  const uint64_t seed = r["seed"].get<uint64_t>();
  auto derive = [&](ordered_json &slot, uint64_t salt) {
    if (slot.is_null()) slot = DeriveSeed(seed, salt);
    return slot.get<uint64_t>();
  };

  PipelineConfig c;
  c.seed = seed;

  // Paths: absolute and normalized in the resolved copy.
  auto path = [&](ordered_json &slot) {
    std::string p = ResolvePath(slot, base_dir);
    slot = p.empty() ? ordered_json() : ordered_json(p);
    return p;
  };
  if (overrides.out_dir) {
    r["out_dir"] = fs::absolute(*overrides.out_dir).lexically_normal().string();
  }
  c.out_dir = path(r["out_dir"]);
  if (c.out_dir.empty()) Fail(ErrorCode::kConfig, "out_dir must be set");

  c.normalization_table = path(r["normalization"]["table"]);
  c.normalization_extend = r["normalization"]["extend_default"];

  auto &in = r["ingest"];
  for (auto &s : in["sources"]) {
    if (!s.contains("adapter") || !s.contains("path")) {
      Fail(ErrorCode::kConfig, "ingest.sources entries need adapter and path");
    }
    if (s["adapter"] != "file") {
      Fail(ErrorCode::kConfig, "unknown source adapter \"" +
                                   s["adapter"].get<std::string>() + "\"");
    }
    ordered_json p = s["path"];
    c.sources.push_back({"file", path(p)});
    s["path"] = p;
  }
  auto date = [&](const char *key) {
    auto d = ParseDate(in[key].get<std::string>());
    if (!d) Fail(ErrorCode::kConfig, std::string("ingest.") + key + ": bad date");
    return *d;
  };
  c.query.date_from = date("date_from");
  c.query.date_to = date("date_to");
  c.query.max_items = Positive<int64_t>(in["max_items"], "ingest.max_items");
  c.query.keywords = in["keywords"].get<std::vector<std::string>>();
  c.max_attempts = Positive<int>(in["max_attempts"], "ingest.max_attempts");
  c.retry_backoff_ms = in["retry_backoff_ms"];
  try {
    c.query.Validate(false);
  } catch (const Error &e) {
    Fail(ErrorCode::kConfig, std::string("ingest: ") + e.what());
  }

  c.language_threshold = r["filter"]["language_threshold"];
  if (c.language_threshold < 0 || c.language_threshold > 1) {
    Fail(ErrorCode::kConfig, "filter.language_threshold must be in [0, 1]");
  }
  c.filter_lexicon = path(r["filter"]["lexicon"]);

  auto &an = r["annotation"];
  c.annotation_store = path(an["store"]);
  c.annotators = path(an["annotators"]);
  c.host = an["host"];
  c.port = an["port"];
  if (c.port < 0 || c.port > 65535) Fail(ErrorCode::kConfig, "annotation.port out of range");
  c.lease_timeout_minutes =
      Positive<int>(an["lease_timeout_minutes"], "annotation.lease_timeout_minutes");
  c.required_votes = Positive<int>(an["required_votes"], "annotation.required_votes");

  if (r["data"]["gold"].is_null()) {
    r["data"]["gold"] = (fs::path(c.out_dir) / "gold" / "gold.jsonl").string();
  }
  c.gold = path(r["data"]["gold"]);

  auto &sp = r["split"];
  c.split = {sp["train"], sp["val"], sp["test"]};
  eval::ValidateRatios(c.split);
  c.split_seed = derive(sp["seed"], kSplitSalt);

  auto &bal = r["balance"];
  c.linear_balance = ParseBalance(bal["linear"], "balance.linear");
  c.sbilstm_balance = ParseBalance(bal["sbilstm"], "balance.sbilstm");
  if (c.sbilstm_balance == balance::Mode::kSmote) {
    Fail(ErrorCode::kConfig,
         "balance.sbilstm: smote needs fixed-length feature vectors; use "
         "duplicate or none");
  }
  c.smote_k = Positive<int>(bal["k"], "balance.k");
  c.balance_seed = derive(bal["seed"], kBalanceSalt);

  auto &ft = r["features"];
  c.min_df = Positive<int>(ft["min_df"], "features.min_df");
  auto &em = ft["embeddings"];
  c.embeddings_enabled = em["enabled"];
  c.embeddings_pretrained = path(em["pretrained"]);
  c.embeddings.epochs = Positive<int>(em["epochs"], "features.embeddings.epochs");
  c.embeddings.min_n = Positive<int>(em["min_n"], "features.embeddings.min_n");
  c.embeddings.max_n = Positive<int>(em["max_n"], "features.embeddings.max_n");
  if (c.embeddings.max_n < c.embeddings.min_n) {
    Fail(ErrorCode::kConfig, "features.embeddings: max_n < min_n");
  }
  c.embeddings.negatives = Positive<int>(em["negatives"], "features.embeddings.negatives");
  c.embeddings.window = Positive<int>(em["window"], "features.embeddings.window");
  c.embeddings.min_count = Positive<int>(em["min_count"], "features.embeddings.min_count");
  c.embeddings.learning_rate =
      Positive<double>(em["learning_rate"], "features.embeddings.learning_rate");
  c.embeddings.seed = derive(em["seed"], kEmbeddingSalt);

  auto &md = r["models"];
  c.rule_lexicon = path(md["rule"]["lexicon"]);
  auto prec = md["rule"]["precedence"].get<std::vector<std::string>>();
  std::set<Label> seen;
  if (prec.size() != 3) {
    Fail(ErrorCode::kConfig, "models.rule.precedence needs the three hate labels");
  }
  for (size_t i = 0; i < 3; ++i) {
    auto l = ParseLabel(prec[i]);
    if (!l || *l == Label::kNonhate || !seen.insert(*l).second) {
      Fail(ErrorCode::kConfig,
           "models.rule.precedence needs racial, religious and gender once each");
    }
    c.precedence[i] = *l;
  }
  auto &li = md["linear"];
  c.linear.learning_rate = Positive<double>(li["learning_rate"], "models.linear.learning_rate");
  c.linear.l2 = li["l2"];
  if (c.linear.l2 < 0) Fail(ErrorCode::kConfig, "models.linear.l2 must be >= 0");
  c.linear.epochs = Positive<int>(li["epochs"], "models.linear.epochs");
  c.linear.init_scale = li["init_scale"];
  c.linear.seed = derive(li["seed"], kLinearSalt);

  auto &sb = md["sbilstm"];
  for (const char *k : {"embedding_dim", "hidden", "layers", "dense", "max_len",
                        "batch_size", "epochs", "learning_rate", "clip_norm"}) {
    Positive<double>(sb[k], std::string("models.sbilstm.") + k);
  }
  if (sb["patience"].get<int>() < 0) {
    Fail(ErrorCode::kConfig, "models.sbilstm.patience must be >= 0");
  }
  if (sb["dropout"].get<double>() < 0 || sb["dropout"].get<double>() >= 1) {
    Fail(ErrorCode::kConfig, "models.sbilstm.dropout must be in [0, 1)");
  }
  sb["seed"] = derive(sb["seed"], kSBiLstmSalt);
  try {
    c.sbilstm = models::SBiLstmConfig::FromJson(sb);
  } catch (const Error &e) {
    Fail(ErrorCode::kConfig, std::string("models.sbilstm: ") + e.what());
  }
  c.embeddings.dim = c.sbilstm.embedding_dim;

  auto &ev = r["evaluate"];
  try {
    c.averaging = eval::ParseAveraging(ev["averaging"]);
  } catch (const Error &e) {
    Fail(ErrorCode::kConfig, std::string("evaluate.averaging: ") + e.what());
  }
  c.compare_models = ev["models"].get<std::vector<std::string>>();
  for (const auto &m : c.compare_models) {
    try {
      models::ParseModelType(m);
    } catch (const Error &) {
      Fail(ErrorCode::kConfig, "evaluate.models: unknown model \"" + m + "\"");
    }
  }

  c.predict_model = path(r["predict"]["model"]);
  c.resolved = std::move(r);
  return c;
}

}  // namespace amhs::pipeline
