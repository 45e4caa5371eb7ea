/*
 * Copyright (c) 2026 The srsd-bench Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SRSD_SRSD_H
#define SRSD_SRSD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SRSD_BUILDING)
#define SRSD_API __declspec(dllexport)
#else
#define SRSD_API __declspec(dllimport)
#endif
#else
#define SRSD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srsd_status {
  SRSD_OK = 0,
  SRSD_E_INVALID_ARGUMENT = 1,
  SRSD_E_PARSE = 2,
  SRSD_E_DOMAIN = 3,
  SRSD_E_DECODE = 4,
  SRSD_E_SCHEMA = 5,
  SRSD_E_IO = 6,
  SRSD_E_SAMPLING = 7,
  SRSD_E_DATA = 8,
  SRSD_E_NOT_FOUND = 9,
  SRSD_E_INTERNAL = 99
} srsd_status;

typedef struct srsd_expr srsd_expr;
typedef struct srsd_catalog srsd_catalog;

SRSD_API const char* srsd_version(void);

/* Message of the last failure on the calling thread; empty after success. */
SRSD_API const char* srsd_last_error(void);

/* Frees strings returned through char** out-parameters. */
SRSD_API void srsd_string_free(char* s);

/* Infix text over x1, x2, ... (or X1, X2, ...). */
SRSD_API srsd_status srsd_expr_parse(const char* text, srsd_expr** out);
/* Equation file: prefix tokens plus constants line, or one infix line. */
SRSD_API srsd_status srsd_expr_read_file(const char* path, srsd_expr** out);
SRSD_API srsd_status srsd_expr_write_file(const srsd_expr* e, const char* path);
SRSD_API void srsd_expr_free(srsd_expr* e);
SRSD_API srsd_status srsd_expr_canonicalize(const srsd_expr* e, srsd_expr** out);
SRSD_API srsd_status srsd_expr_to_infix(const srsd_expr* e, char** out);
/* Preorder skeleton tokens of the canonical form. */
SRSD_API srsd_status srsd_expr_to_prefix(const srsd_expr* e, char** out);
SRSD_API srsd_status srsd_expr_node_count(const srsd_expr* e, size_t* out);
SRSD_API srsd_status srsd_expr_op_count(const srsd_expr* e, size_t* out);
/* Strict evaluation; SRSD_E_DOMAIN on a fault. */
SRSD_API srsd_status srsd_expr_evaluate(const srsd_expr* e, const double* x, size_t n_vars, double* out);

SRSD_API srsd_status srsd_ned(const srsd_expr* pred, const srsd_expr* truth, double* ned, size_t* distance,
                              size_t* truth_size);
SRSD_API srsd_status srsd_is_symbolic_solution(const srsd_expr* pred, const srsd_expr* truth, int* out);
SRSD_API srsd_status srsd_r_squared(const double* pred, const double* target, size_t n, double* out);

/* set: "easy", "medium", "hard" or "all". */
SRSD_API srsd_status srsd_catalog_builtin(const char* set, srsd_catalog** out);
SRSD_API srsd_status srsd_catalog_load_file(const char* path, srsd_catalog** out);
SRSD_API void srsd_catalog_free(srsd_catalog* c);
SRSD_API size_t srsd_catalog_size(const srsd_catalog* c);
/* Returned strings live as long as the catalog. */
SRSD_API srsd_status srsd_catalog_id(const srsd_catalog* c, size_t i, const char** out);
SRSD_API srsd_status srsd_catalog_set(const srsd_catalog* c, size_t i, const char** out);
SRSD_API srsd_status srsd_catalog_formula(const srsd_catalog* c, size_t i, const char** out);
SRSD_API srsd_status srsd_catalog_true_expr(const srsd_catalog* c, size_t i, srsd_expr** out);
/* Sets *has_value to 0 when the range is degenerate. */
SRSD_API srsd_status srsd_catalog_domain_range(const srsd_catalog* c, size_t i, double* out, int* has_value);
/* Spec file text of the whole catalog. */
SRSD_API srsd_status srsd_catalog_save(const srsd_catalog* c, char** out);

typedef enum srsd_noise_scale { SRSD_NOISE_MEAN = 0, SRSD_NOISE_RMS = 1 } srsd_noise_scale;

typedef struct srsd_generate_options {
  const char* set;
  const char* const* catalog_paths;
  size_t n_catalog_paths;
  const char* out_dir;
  uint64_t seed;
  size_t rows;
  double ratios[3];
  double gamma;
  srsd_noise_scale noise_scale;
  size_t workers;
} srsd_generate_options;

typedef struct srsd_eval_options {
  const char* pred_dir;
  const char* data_dir;
  double tau;
  const char* const* problems;
  size_t n_problems;
  size_t workers;
} srsd_eval_options;

typedef struct srsd_complexity_options {
  const char* set;
  const char* const* catalog_paths;
  size_t n_catalog_paths;
} srsd_complexity_options;

typedef struct srsd_synth_options {
  const char* out_dir;
  size_t n_equations;
  uint64_t seed;
  size_t max_tokens;
  size_t range_sets;
  size_t rows;
  double ratios[3];
  int k_lo;
  int k_hi;
  double alpha;
  const char* train_set;
  size_t workers;
} srsd_synth_options;

typedef struct srsd_leakcheck_options {
  const char* corpus_dir;
  /* A problem directory or a set name. */
  const char* catalog;
} srsd_leakcheck_options;

typedef struct srsd_discover_options {
  const char* data_dir;
  const char* out_dir;
  /* GP settings as JSON text, or NULL for defaults. */
  const char* gp_config_json;
  size_t restarts;
  uint64_t seed;
  const char* const* problems;
  size_t n_problems;
  size_t workers;
} srsd_discover_options;

SRSD_API void srsd_generate_options_init(srsd_generate_options* o);
SRSD_API void srsd_eval_options_init(srsd_eval_options* o);
SRSD_API void srsd_complexity_options_init(srsd_complexity_options* o);
SRSD_API void srsd_synth_options_init(srsd_synth_options* o);
SRSD_API void srsd_leakcheck_options_init(srsd_leakcheck_options* o);
SRSD_API void srsd_discover_options_init(srsd_discover_options* o);

/* Each writes a report (JSON, or CSV for complexity) to *out. */
SRSD_API srsd_status srsd_run_generate(const srsd_generate_options* o, char** out);
SRSD_API srsd_status srsd_run_ned(const char* pred_path, const char* truth_path, char** out);
SRSD_API srsd_status srsd_run_eval(const srsd_eval_options* o, char** out);
SRSD_API srsd_status srsd_run_complexity(const srsd_complexity_options* o, char** out);
SRSD_API srsd_status srsd_run_synth(const srsd_synth_options* o, char** out);
SRSD_API srsd_status srsd_run_leakcheck(const srsd_leakcheck_options* o, char** out);
SRSD_API srsd_status srsd_run_discover(const srsd_discover_options* o, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SRSD_SRSD_H */
