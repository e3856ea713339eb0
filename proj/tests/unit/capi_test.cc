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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "amhs/amhs.h"

namespace {

namespace fs = std::filesystem;

TEST_CASE("version, names and errors") {
  CHECK(std::string(amhs_version()) == "0.1.0");
  CHECK(std::string(amhs_status_name(AMHS_ERR_CONFIG)) == "config error");
  CHECK(std::string(amhs_label_name(0)) == "racial");
  CHECK(std::string(amhs_label_name(3)) == "nonhate");
  CHECK(amhs_label_name(4) == nullptr);
  CHECK(amhs_set_log_level("warn") == AMHS_OK);
  CHECK(amhs_set_log_level("loud") == AMHS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(amhs_last_error()).size() > 0);
  CHECK(amhs_set_log_level("warn") == AMHS_OK);
  CHECK(std::string(amhs_last_error()).empty());
}

TEST_CASE("model load and predict") {
  amhs_model *model = nullptr;
  CHECK(amhs_model_load("/nonexistent/model.json", &model) != AMHS_OK);
  CHECK(model == nullptr);
  REQUIRE(amhs_model_load(AMHS_DEMO_MODEL, &model) == AMHS_OK);
  int label = -1;
  double dist[AMHS_NUM_LABELS] = {0};
  REQUIRE(amhs_model_predict(model, "ቹሱጡሩ ኑልሎ ዙዘ ፌዩዱ ጤበራይ ።", &label, dist) == AMHS_OK);
  CHECK(label == 3);
  double sum = 0.0;
  for (double v : dist) sum += v;
  CHECK(std::fabs(sum - 1.0) < 1e-9);
  CHECK(amhs_model_predict(model, nullptr, &label, dist) == AMHS_ERR_INVALID_ARGUMENT);
  CHECK(amhs_model_predict(nullptr, "x", &label, dist) == AMHS_ERR_INVALID_ARGUMENT);
  amhs_model_free(model);
  amhs_model_free(nullptr);
}

TEST_CASE("pipeline through the C interface") {
  fs::path dir = fs::temp_directory_path() / "amhs_capi_test";
  fs::remove_all(dir);
  REQUIRE(amhs_generate_synthetic((dir / "corpus").c_str(), 1, 200) == AMHS_OK);

  amhs_pipeline *p = nullptr;
  CHECK(amhs_pipeline_open("/nonexistent.json", nullptr, &p) == AMHS_ERR_CONFIG);
  CHECK(amhs_pipeline_open(nullptr, "{\"sed\": 1}", &p) != AMHS_OK);

  std::string cfg = (dir / "config.json").string();
  {
    FILE *f = std::fopen(cfg.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(
        "{\"ingest\": {\"sources\": ["
        "{\"adapter\": \"file\", \"path\": \"corpus/posts_twitter.jsonl\"},"
        "{\"adapter\": \"file\", \"path\": \"corpus/posts_facebook.jsonl\"}]},"
        "\"filter\": {\"lexicon\": \"corpus/filter_lexicon.tsv\"}}",
        f);
    std::fclose(f);
  }
  std::string overrides = "{\"seed\": 4, \"out_dir\": \"" + (dir / "out").string() + "\"}";
  REQUIRE(amhs_pipeline_open(cfg.c_str(), overrides.c_str(), &p) == AMHS_OK);

  char *resolved = nullptr;
  REQUIRE(amhs_pipeline_resolved_config(p, &resolved) == AMHS_OK);
  CHECK(std::string(resolved).find("\"seed\": 4") != std::string::npos);
  amhs_string_free(resolved);

  CHECK(amhs_pipeline_run(p, "ingest", nullptr, nullptr) == AMHS_OK);
  CHECK(amhs_pipeline_run(p, "filter", nullptr, nullptr) == AMHS_OK);
  std::string labels = "{\"labels\": \"" + (dir / "corpus/labels.tsv").string() + "\"}";
  CHECK(amhs_pipeline_run(p, "export-gold", labels.c_str(), nullptr) == AMHS_OK);
  CHECK(amhs_pipeline_run(p, "train", "{\"model\": \"linear\"}", nullptr) == AMHS_OK);
  char *summary = nullptr;
  CHECK(amhs_pipeline_run(p, "evaluate", "{\"model\": \"linear\"}", &summary) == AMHS_OK);
  REQUIRE(summary != nullptr);
  amhs_string_free(summary);

  char *preds = nullptr;
  std::string model_file =
      "{\"model_file\": \"" + (dir / "out/train/linear/model.json").string() +
      "\", \"texts\": [\"a\", \"b\"]}";
  REQUIRE(amhs_pipeline_run(p, "predict", model_file.c_str(), &preds) == AMHS_OK);
  CHECK(std::string(preds).find("distribution") != std::string::npos);
  amhs_string_free(preds);

  CHECK(amhs_pipeline_run(p, "train", "{\"model\": \"svm\"}", nullptr) ==
        AMHS_ERR_INVALID_ARGUMENT);
  CHECK(amhs_pipeline_run(p, "bake", nullptr, nullptr) == AMHS_ERR_INVALID_ARGUMENT);
  CHECK(amhs_pipeline_run(p, "train", "not json", nullptr) != AMHS_OK);
  amhs_pipeline_close(p);
  fs::remove_all(dir);
}

}  // namespace
