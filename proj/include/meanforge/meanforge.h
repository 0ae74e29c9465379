// Copyright 2026 The Meanforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the meanforge library.
 *
 * Every function returns an mf_status. On failure the message of the last
 * error on the calling thread is available from mf_last_error(). Objects
 * are opaque and released with their matching *_free function; strings
 * handed out by the library are released with mf_string_free. */
#ifndef MEANFORGE_MEANFORGE_H_
#define MEANFORGE_MEANFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MEANFORGE_BUILDING_LIBRARY)
#define MF_API __declspec(dllexport)
#else
#define MF_API __declspec(dllimport)
#endif
#else
#define MF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
  MF_OK = 0,
  MF_DOMAIN_ERROR = 1,
  MF_PARSE_ERROR = 2,
  MF_DIMENSION_MISMATCH = 3,
  MF_NON_POSITIVE = 4,
  MF_NON_CONVERGENCE = 5,
  MF_INVALID_ARGUMENT = 6, /* null pointer, index out of range */
  MF_IO_ERROR = 7,
  MF_INTERNAL_ERROR = 8
} mf_status;

MF_API const char* mf_status_name(mf_status status);
MF_API const char* mf_last_error(void);
/* Offending token of the last MF_PARSE_ERROR, or "". */
MF_API const char* mf_last_error_token(void);
MF_API const char* mf_version(void);
MF_API void mf_string_free(char* s);

/* ---- scalar means ---------------------------------------------------- */

typedef struct mf_eval_args {
  const char* spec; /* "<family>[:kind]", e.g. "Lv", "Lp;v:explicit" */
  double a;
  double b;
  double v;
  double p;
  double q;
  int has_v;
  int has_p;
  int has_q;
} mf_eval_args;

MF_API mf_status mf_eval(const mf_eval_args* args, double* out);

/* Row-major 3x3 table of weighted means indexed by (p_v, q_v) with both
 * running over arith, geom, harm. */
MF_API mf_status mf_weighted_table(double a, double b, double v, double out[9]);
MF_API const char* mf_weighted_table_name(int row, int col);

/* ---- verification suite ------------------------------------------------ */

typedef struct mf_verify_config {
  uint64_t seed;
  size_t samples;
  size_t power_samples;
  size_t algebra_samples;
  size_t operator_samples;
  int operator_dims[16];
  size_t operator_dims_count;
  double log_ratio_max;
  double tol_scalar_chain;
  double tol_operator_chain;
  double tol_identity;
  double tol_exact_identity;
  double tol_algebra;
  double tol_operator_identity;
  double tol_integral;
  double tol_stabilizer;
  double tol_commuting;
} mf_verify_config;

typedef struct mf_report mf_report;

typedef enum mf_format { MF_FORMAT_JSON = 0, MF_FORMAT_TEXT = 1 } mf_format;

MF_API void mf_verify_config_init(mf_verify_config* config);
MF_API mf_status mf_verify_run(const mf_verify_config* config, mf_report** out);
MF_API int mf_report_passed(const mf_report* report);
MF_API double mf_report_wall_seconds(const mf_report* report);
MF_API mf_status mf_report_render(const mf_report* report, mf_format format, char** out);
MF_API void mf_report_free(mf_report* report);

/* ---- fixed-point stabilizer -------------------------------------------- */

typedef struct mf_stabilize_options {
  int grid_points;
  double half_width; /* grid covers log x in [-half_width, half_width] */
  double tolerance;
  int max_iter;
  const char* initial; /* symmetric mean name for the starting trace, or NULL */
} mf_stabilize_options;

typedef struct mf_trace mf_trace;

MF_API void mf_stabilize_options_init(mf_stabilize_options* options);
/* q and p are symmetric mean names: classic kinds, duals with a trailing
 * '*', or "binomial:<p>". On MF_NON_CONVERGENCE the residual history is
 * available from mf_last_history. */
MF_API mf_status mf_stabilize(const char* q, const char* p, const mf_stabilize_options* options,
                              mf_trace** out);
MF_API const double* mf_last_history(size_t* count);
MF_API int mf_trace_size(const mf_trace* trace);
MF_API mf_status mf_trace_point(const mf_trace* trace, int i, double* x, double* f);
MF_API mf_status mf_trace_eval(const mf_trace* trace, double x, double* out);
MF_API int mf_trace_iterations(const mf_trace* trace);
MF_API double mf_trace_residual(const mf_trace* trace);
MF_API void mf_trace_free(mf_trace* trace);

/* ---- matrices and operator means ------------------------------------- */

typedef struct mf_matrix mf_matrix;

/* Entries are row-major. im may be NULL for a real matrix. */
MF_API mf_status mf_matrix_from_entries(size_t n, const double* re, const double* im,
                                        mf_matrix** out);
MF_API mf_status mf_matrix_parse(const char* text, mf_matrix** out);
MF_API mf_status mf_matrix_read(const char* path, mf_matrix** out);
MF_API size_t mf_matrix_dim(const mf_matrix* m);
MF_API mf_status mf_matrix_entry(const mf_matrix* m, size_t i, size_t j, double* re, double* im);
MF_API mf_status mf_matrix_render(const mf_matrix* m, char** out);
MF_API void mf_matrix_free(mf_matrix* m);

/* spec: "arith", "geom", "harm", "harm:inversion", "Lv[:representing|composed]",
 * "Iv[:...]", "log", "identric", "log_dual", "identric_dual". */
MF_API mf_status mf_operator_mean(const char* spec, const mf_matrix* a, const mf_matrix* b,
                                  double v, mf_matrix** out);

typedef struct mf_loewner {
  int holds;
  double witness;
  double normalized;
} mf_loewner;

MF_API mf_status mf_loewner_leq(const mf_matrix* a, const mf_matrix* b, double tol,
                                mf_loewner* out);

/* Checks every operator chain at (A, B, v) and renders one line per link. */
MF_API mf_status mf_operator_chains(const mf_matrix* a, const mf_matrix* b, double v,
                                    double tol, int* all_hold, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MEANFORGE_MEANFORGE_H_ */
