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

#include "amhs/amhs.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "common/error.h"
#include "common/label.h"
#include "common/log.h"
#include "common/version.h"
#include "models/classifier.h"
#include "pipeline/config.h"
#include "pipeline/pipeline.h"
#include "pipeline/synthetic.h"
#include "textnorm/normalizer.h"

struct amhs_pipeline {
  std::unique_ptr<amhs::pipeline::Pipeline> impl;
};

struct amhs_model {
  amhs::models::Classifier impl;
};

namespace {

using nlohmann::ordered_json;
using amhs::ErrorCode;

thread_local std::string g_last_error;

amhs_status ToStatus(ErrorCode code) { return static_cast<amhs_status>(code); }

template <typename Fn>
amhs_status Guard(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return AMHS_OK;
  } catch (const amhs::Error &e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const ordered_json::exception &e) {
    g_last_error = e.what();
    return AMHS_ERR_PARSE;
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return AMHS_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return AMHS_ERR_INTERNAL;
  }
}

char *Dup(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(bool ok, const char *what) {
  if (!ok) amhs::Fail(ErrorCode::kInvalidArgument, what);
}

ordered_json ParseArgs(const char *json) {
  if (!json || !*json) return ordered_json::object();
  ordered_json j = ordered_json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    amhs::Fail(ErrorCode::kInvalidArgument, "arguments must be a JSON object");
  }
  return j;
}

std::string StringArg(const ordered_json &args, const char *key) {
  if (!args.contains(key)) return "";
  if (!args[key].is_string()) {
    amhs::Fail(ErrorCode::kInvalidArgument, std::string(key) + " must be a string");
  }
  return args[key].get<std::string>();
}

void RejectUnknown(const ordered_json &args, std::initializer_list<const char *> keys) {
  for (const auto &[k, v] : args.items()) {
    bool known = false;
    for (const char *key : keys) known = known || k == key;
    if (!known) amhs::Fail(ErrorCode::kInvalidArgument, "unknown argument " + k);
  }
}

ordered_json Run(amhs::pipeline::Pipeline &p, const std::string &stage,
                 const ordered_json &args) {
  using amhs::models::ParseModelType;
  if (stage == "ingest") {
    RejectUnknown(args, {});
    return p.Ingest();
  }
  if (stage == "filter") {
    RejectUnknown(args, {});
    return p.Filter();
  }
  if (stage == "export-gold") {
    RejectUnknown(args, {"dataset", "labels"});
    return p.ExportGold(StringArg(args, "dataset"), StringArg(args, "labels"));
  }
  if (stage == "train") {
    RejectUnknown(args, {"model"});
    return p.Train(ParseModelType(StringArg(args, "model")));
  }
  if (stage == "evaluate") {
    RejectUnknown(args, {"model", "model_file"});
    return p.Evaluate(ParseModelType(StringArg(args, "model")),
                      StringArg(args, "model_file"));
  }
  if (stage == "compare") {
    RejectUnknown(args, {});
    return p.Compare();
  }
  if (stage == "predict") {
    RejectUnknown(args, {"model_file", "texts"});
    if (!args.contains("texts") || !args["texts"].is_array()) {
      amhs::Fail(ErrorCode::kInvalidArgument, "predict needs a texts array");
    }
    auto out = p.Predict(StringArg(args, "model_file"),
                         args["texts"].get<std::vector<std::string>>());
    return ordered_json(out);
  }
  if (stage == "serve") {
    RejectUnknown(args, {"import", "port"});
    int port = -1;
    if (args.contains("port")) {
      if (!args["port"].is_number_integer()) {
        amhs::Fail(ErrorCode::kInvalidArgument, "port must be an integer");
      }
      port = args["port"];
    }
    p.Serve(StringArg(args, "import"), port);
    return ordered_json::object();
  }
  amhs::Fail(ErrorCode::kInvalidArgument, "unknown stage " + stage);
}

}  // namespace

extern "C" {

const char *amhs_version(void) { return amhs::kVersion; }

const char *amhs_status_name(amhs_status status) {
  if (status == AMHS_OK) return "ok";
  if (status < AMHS_ERR_INVALID_ARGUMENT || status > AMHS_ERR_INTERNAL) {
    return "unknown";
  }
  return amhs::ErrorCodeName(static_cast<ErrorCode>(status));
}

const char *amhs_last_error(void) { return g_last_error.c_str(); }

void amhs_string_free(char *s) { std::free(s); }

const char *amhs_label_name(int label) {
  if (label < 0 || label >= amhs::kNumLabels) return nullptr;
  return amhs::kLabelNames[label].data();
}

amhs_status amhs_set_log_level(const char *level) {
  return Guard([&] {
    Require(level != nullptr, "level is null");
    auto l = spdlog::level::from_str(level);
    if (l == spdlog::level::off && std::strcmp(level, "off") != 0) {
      amhs::Fail(ErrorCode::kInvalidArgument, std::string("unknown log level ") + level);
    }
    amhs::SetLogLevel(l);
  });
}

amhs_status amhs_pipeline_open(const char *config_path,
                               const char *overrides_json,
                               amhs_pipeline **out) {
  return Guard([&] {
    Require(out != nullptr, "out is null");
    *out = nullptr;
    amhs::pipeline::ConfigOverrides ov;
    ordered_json j;
    try {
      j = ParseArgs(overrides_json);
      RejectUnknown(j, {"seed", "out_dir"});
    } catch (const amhs::Error &e) {
      amhs::Fail(ErrorCode::kConfig, e.what());
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) {
        amhs::Fail(ErrorCode::kConfig, "seed must be a non-negative integer");
      }
      ov.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("out_dir")) ov.out_dir = StringArg(j, "out_dir");
    auto config = amhs::pipeline::LoadConfig(config_path ? config_path : "", ov);
    auto handle = std::make_unique<amhs_pipeline>();
    handle->impl = std::make_unique<amhs::pipeline::Pipeline>(std::move(config));
    *out = handle.release();
  });
}

void amhs_pipeline_close(amhs_pipeline *pipeline) { delete pipeline; }

amhs_status amhs_pipeline_resolved_config(const amhs_pipeline *pipeline,
                                          char **json_out) {
  return Guard([&] {
    Require(pipeline && json_out, "null argument");
    *json_out = Dup(pipeline->impl->config().resolved.dump(2));
  });
}

amhs_status amhs_pipeline_run(amhs_pipeline *pipeline, const char *stage,
                              const char *args_json, char **summary_out) {
  return Guard([&] {
    Require(pipeline && stage, "null argument");
    if (summary_out) *summary_out = nullptr;
    auto summary = Run(*pipeline->impl, stage, ParseArgs(args_json));
    if (summary_out) *summary_out = Dup(summary.dump());
  });
}

amhs_status amhs_generate_synthetic(const char *out_dir, uint64_t seed,
                                    size_t num_docs) {
  return Guard([&] {
    Require(out_dir != nullptr, "out_dir is null");
    amhs::pipeline::SyntheticOptions options;
    options.seed = seed;
    options.num_docs = num_docs;
    amhs::pipeline::WriteSynthetic(amhs::pipeline::GenerateSynthetic(options),
                                   out_dir);
  });
}

amhs_status amhs_model_load(const char *path, amhs_model **out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = nullptr;
    *out = new amhs_model{amhs::models::Classifier::Load(path)};
  });
}

void amhs_model_free(amhs_model *model) { delete model; }

amhs_status amhs_model_predict(const amhs_model *model, const char *text,
                               int *label_out,
                               double distribution_out[AMHS_NUM_LABELS]) {
  return Guard([&] {
    Require(model && text, "null argument");
    auto doc = amhs::textnorm::DefaultNormalizer().Clean("text", text);
    auto p = model->impl.Predict(doc);
    if (label_out) *label_out = amhs::LabelIndex(p.label);
    if (distribution_out) {
      for (int c = 0; c < amhs::kNumLabels; ++c) distribution_out[c] = p.distribution[c];
    }
  });
}

}  // extern "C"
