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

/*
 * C interface to the amhs library. All strings are UTF-8. Functions return
 * an amhs_status; on failure amhs_last_error() describes the problem for
 * the calling thread. Strings returned through char** out-parameters are
 * owned by the caller and released with amhs_string_free().
 */

#ifndef AMHS_AMHS_H_
#define AMHS_AMHS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AMHS_API __declspec(dllexport)
#else
#define AMHS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amhs_status {
  AMHS_OK = 0,
  AMHS_ERR_INVALID_ARGUMENT = 1,
  AMHS_ERR_CONFIG = 2,
  AMHS_ERR_IO = 3,
  AMHS_ERR_PARSE = 4,
  AMHS_ERR_SCHEMA = 5,
  AMHS_ERR_CONFLICT = 6,
  AMHS_ERR_UNAUTHORIZED = 7,
  AMHS_ERR_FORBIDDEN = 8,
  AMHS_ERR_NOT_FOUND = 9,
  AMHS_ERR_NUMERIC = 10,
  AMHS_ERR_UNAVAILABLE = 11,
  AMHS_ERR_INTERNAL = 12
} amhs_status;

/* Label indices: 0 racial, 1 religious, 2 gender, 3 nonhate. */
#define AMHS_NUM_LABELS 4

typedef struct amhs_pipeline amhs_pipeline;
typedef struct amhs_model amhs_model;

AMHS_API const char *amhs_version(void);
AMHS_API const char *amhs_status_name(amhs_status status);
/* Message of the last failed call on this thread; "" after success. */
AMHS_API const char *amhs_last_error(void);
AMHS_API void amhs_string_free(char *s);
/* NULL for an index outside [0, AMHS_NUM_LABELS). */
AMHS_API const char *amhs_label_name(int label);
/* "trace", "debug", "info", "warn", "error" or "off". */
AMHS_API amhs_status amhs_set_log_level(const char *level);

/*
 * Loads a pipeline configuration. config_path may be NULL for defaults.
 * overrides_json may be NULL or an object with optional "seed" (unsigned)
 * and "out_dir" (string, relative to the working directory).
 */
AMHS_API amhs_status amhs_pipeline_open(const char *config_path,
                                        const char *overrides_json,
                                        amhs_pipeline **out);
AMHS_API void amhs_pipeline_close(amhs_pipeline *pipeline);
AMHS_API amhs_status amhs_pipeline_resolved_config(const amhs_pipeline *pipeline,
                                                   char **json_out);

/*
 * Runs one stage. stage is one of "ingest", "filter", "export-gold",
 * "train", "evaluate", "compare", "predict" or "serve"; args_json is an
 * object (NULL for none):
 *   export-gold  {"dataset": id} or {"labels": path}
 *   train        {"model": "rule" | "linear" | "sbilstm"}
 *   evaluate     {"model": type, "model_file"?: path}
 *   predict      {"model_file"?: path, "texts": [string, ...]}
 *   serve        {"import"?: path, "port"?: integer}   (blocks)
 * summary_out (may be NULL) receives a JSON summary; for predict it is an
 * array with one {"label", "distribution"} object per text.
 */
AMHS_API amhs_status amhs_pipeline_run(amhs_pipeline *pipeline,
                                       const char *stage,
                                       const char *args_json,
                                       char **summary_out);

/* Writes the synthetic benchmark corpus into out_dir. */
AMHS_API amhs_status amhs_generate_synthetic(const char *out_dir,
                                             uint64_t seed, size_t num_docs);

/* Model files are self-contained; prediction uses the built-in
 * normalization table. */
AMHS_API amhs_status amhs_model_load(const char *path, amhs_model **out);
AMHS_API void amhs_model_free(amhs_model *model);
AMHS_API amhs_status amhs_model_predict(const amhs_model *model,
                                        const char *text, int *label_out,
                                        double distribution_out[AMHS_NUM_LABELS]);

#ifdef __cplusplus
}
#endif

#endif /* AMHS_AMHS_H_ */
