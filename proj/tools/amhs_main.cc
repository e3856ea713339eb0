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

// Command-line front end. Links only against the C interface.

#include <amhs/amhs.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int Report(amhs_status status, const std::string &what) {
  if (status == AMHS_OK) return kExitOk;
  std::cerr << "amhs: " << what << ": " << amhs_status_name(status) << ": "
            << amhs_last_error() << "\n";
  return status == AMHS_ERR_CONFIG ? kExitUsage : kExitRuntime;
}

struct Globals {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  std::string log_level = "info";
};

int RunStage(const Globals &g, const std::string &stage, const json &args,
             std::string *summary = nullptr) {
  json overrides = json::object();
  if (g.seed) overrides["seed"] = *g.seed;
  if (!g.out.empty()) overrides["out_dir"] = g.out;
  amhs_pipeline *p = nullptr;
  const std::string ov = overrides.dump();
  amhs_status s = amhs_pipeline_open(g.config.empty() ? nullptr : g.config.c_str(),
                                     ov.c_str(), &p);
  if (s != AMHS_OK) return Report(s, "config");
  char *out = nullptr;
  const std::string a = args.dump();
  s = amhs_pipeline_run(p, stage.c_str(), a.c_str(), &out);
  amhs_pipeline_close(p);
  if (s != AMHS_OK) return Report(s, stage);
  if (summary) {
    *summary = out;
  } else {
    std::cerr << stage << ": " << out << "\n";
  }
  amhs_string_free(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Amharic hate speech corpus and classifier pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(amhs_version()));
  Globals g;
  app.add_option("--config", g.config, "Pipeline config file (JSON)");
  app.add_option("--seed", g.seed, "Override the top-level seed");
  app.add_option("--out", g.out, "Override the output directory");
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error, off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  const std::vector<std::string> kModels = {"rule", "linear", "sbilstm"};

  auto *generate = app.add_subcommand("generate", "Write the synthetic benchmark corpus");
  std::string gen_dir;
  size_t gen_docs = 1200;
  generate->add_option("--dir", gen_dir, "Output directory")->required();
  generate->add_option("--docs", gen_docs, "Labeled documents")->check(CLI::Range(4, 1000000));

  auto *ingest = app.add_subcommand("ingest", "Fetch, consolidate and deduplicate posts");
  auto *filter = app.add_subcommand("filter", "Language and keyword filtering");

  auto *serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  std::string serve_import;
  int serve_port = -1;
  serve->add_option("--import", serve_import, "Pool file to import before serving")
      ->check(CLI::ExistingFile);
  serve->add_option("--port", serve_port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));

  auto *export_gold = app.add_subcommand("export-gold", "Write the gold file");
  std::string gold_dataset, gold_labels;
  auto *ds_opt = export_gold->add_option("--dataset", gold_dataset, "Annotation dataset id");
  auto *labels_opt = export_gold->add_option("--labels", gold_labels,
                                             "id<TAB>label file joined with the filtered pool")
                         ->check(CLI::ExistingFile);
  ds_opt->excludes(labels_opt);
  export_gold->require_option(1);

  auto *train = app.add_subcommand("train", "Train one model");
  std::string train_model;
  train->add_option("--model", train_model)->required()->check(CLI::IsMember(kModels));

  auto *evaluate = app.add_subcommand("evaluate", "Evaluate one model on the test split");
  std::string eval_model, eval_file;
  evaluate->add_option("--model", eval_model)->required()->check(CLI::IsMember(kModels));
  evaluate->add_option("--model-file", eval_file)->check(CLI::ExistingFile);

  auto *compare = app.add_subcommand("compare", "Compare the configured models");

  auto *predict = app.add_subcommand("predict", "Classify text");
  std::string pred_text, pred_file, pred_model;
  auto *text_opt = predict->add_option("--text", pred_text, "Text to classify");
  auto *file_opt = predict->add_option("--file", pred_file, "One text per line")
                       ->check(CLI::ExistingFile);
  text_opt->excludes(file_opt);
  predict->add_option("--model", pred_model, "Model file (default: predict.model)")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (predict->parsed() && text_opt->count() + file_opt->count() != 1) {
    std::cerr << "amhs: predict needs --text or --file\n";
    return kExitUsage;
  }
  if (!g.config.empty() && !std::ifstream(g.config)) {
    std::cerr << "amhs: config file not found: " << g.config << "\n";
    return kExitUsage;
  }
  if (amhs_set_log_level(g.log_level.c_str()) != AMHS_OK) {
    return Report(AMHS_ERR_CONFIG, "log level");
  }

  if (generate->parsed()) {
    return Report(amhs_generate_synthetic(gen_dir.c_str(), g.seed.value_or(1), gen_docs),
                  "generate");
  }
  if (ingest->parsed()) return RunStage(g, "ingest", json::object());
  if (filter->parsed()) return RunStage(g, "filter", json::object());
  if (serve->parsed()) {
    json args = json::object();
    if (!serve_import.empty()) args["import"] = serve_import;
    if (serve_port >= 0) args["port"] = serve_port;
    return RunStage(g, "serve", args);
  }
  if (export_gold->parsed()) {
    json args = json::object();
    if (!gold_dataset.empty()) args["dataset"] = gold_dataset;
    if (!gold_labels.empty()) args["labels"] = gold_labels;
    return RunStage(g, "export-gold", args);
  }
  if (train->parsed()) return RunStage(g, "train", {{"model", train_model}});
  if (evaluate->parsed()) {
    json args = {{"model", eval_model}};
    if (!eval_file.empty()) args["model_file"] = eval_file;
    return RunStage(g, "evaluate", args);
  }
  if (compare->parsed()) return RunStage(g, "compare", json::object());
  if (predict->parsed()) {
    std::vector<std::string> texts;
    if (text_opt->count()) {
      texts.push_back(pred_text);
    } else {
      std::ifstream in(pred_file);
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) texts.push_back(line);
      }
    }
    json args = {{"texts", texts}};
    if (!pred_model.empty()) args["model_file"] = pred_model;
    std::string out;
    int rc = RunStage(g, "predict", args, &out);
    if (rc != kExitOk) return rc;
    for (const auto &row : json::parse(out)) std::cout << row.dump() << "\n";
    return kExitOk;
  }
  return kExitUsage;
}
