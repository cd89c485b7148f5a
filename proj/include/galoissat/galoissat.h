/*
 * galoissat C API.
 *
 * Every object is an opaque handle created by a gs_*_ function returning
 * gs_status and released with the matching gs_*_free. On failure the out
 * parameter is left untouched (except where noted) and gs_last_error()
 * returns a message for the calling thread. Strings returned through char**
 * are heap-allocated and must be released with gs_string_free.
 *
 * Handles are immutable after creation and may be shared across threads;
 * the error message buffer is thread-local.
 */
#ifndef GALOISSAT_H
#define GALOISSAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GALOISSAT_BUILDING)
#    define GS_API __declspec(dllexport)
#  else
#    define GS_API __declspec(dllimport)
#  endif
#else
#  define GS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_INVALID_ARGUMENT = 1,
  GS_ERR_PARSE = 2,
  GS_ERR_IO = 3,
  GS_ERR_UNSAT_AT_PARSE = 4, /* input holds an explicit empty clause */
  GS_ERR_NUMERIC = 5,        /* NaN/Inf in logits, gradients or losses */
  GS_ERR_MODEL_VERIFICATION = 6,
  GS_ERR_LABEL_MISMATCH = 7,
  GS_ERR_INTERNAL = 8
} gs_status;

/* Values match the SAT-competition exit codes where one exists. */
typedef enum gs_outcome {
  GS_UNKNOWN = 0,
  GS_TIMEOUT = 1,
  GS_SAT = 10,
  GS_UNSAT = 20
} gs_outcome;

GS_API const char* gs_last_error(void);
GS_API const char* gs_status_name(gs_status status);
GS_API const char* gs_version(void);
GS_API void gs_string_free(char* s);

/* ---- CNF ---------------------------------------------------------------- */

typedef struct gs_cnf gs_cnf;

/* strict != 0 turns a header/body clause-count mismatch into GS_ERR_PARSE. */
GS_API gs_status gs_cnf_parse(const char* text, size_t len, int strict, gs_cnf** out);
GS_API gs_status gs_cnf_read_file(const char* path, int strict, gs_cnf** out);
/* Clauses as DIMACS literals, each terminated by 0. */
GS_API gs_status gs_cnf_from_literals(uint32_t num_vars, const int64_t* lits, size_t len,
                                      gs_cnf** out);
GS_API size_t gs_cnf_warning_count(const gs_cnf* cnf);
GS_API const char* gs_cnf_warning(const gs_cnf* cnf, size_t i);
GS_API uint32_t gs_cnf_num_vars(const gs_cnf* cnf);
GS_API size_t gs_cnf_num_clauses(const gs_cnf* cnf);
GS_API int gs_cnf_trivially_unsat(const gs_cnf* cnf);
GS_API gs_status gs_cnf_write(const gs_cnf* cnf, char** out_text);
GS_API gs_status gs_cnf_write_file(const gs_cnf* cnf, const char* path);
/* values[v-1] is variable v; len must equal gs_cnf_num_vars. */
GS_API gs_status gs_cnf_verify_model(const gs_cnf* cnf, const uint8_t* values, size_t len,
                                     int* out_ok);
/* Appends one unit clause per literal; literals must name distinct variables. */
GS_API gs_status gs_cnf_augment(const gs_cnf* cnf, const int64_t* lits, size_t n, gs_cnf** out);
GS_API void gs_cnf_free(gs_cnf* cnf);

/* ---- Fixed-width normalization ----------------------------------------- */

typedef struct gs_normalized gs_normalized;

GS_API gs_status gs_normalize(const gs_cnf* cnf, unsigned k, gs_normalized** out);
GS_API uint32_t gs_normalized_original_vars(const gs_normalized* norm);
GS_API uint32_t gs_normalized_total_vars(const gs_normalized* norm);
/* Borrowed; valid while norm lives. */
GS_API const gs_cnf* gs_normalized_cnf(const gs_normalized* norm);
/* DIMACS preceded by a `c original_vars <n>` comment. */
GS_API gs_status gs_normalized_write(const gs_normalized* norm, char** out_text);
GS_API gs_status gs_project_assignment(const gs_normalized* norm, const uint8_t* full,
                                       size_t full_len, uint8_t* out, size_t out_len);
GS_API void gs_normalized_free(gs_normalized* norm);

/* ---- Training ----------------------------------------------------------- */

typedef enum gs_batch_select { GS_MIN_LOSS = 0, GS_MAX_LOSS = 1 } gs_batch_select;

typedef struct gs_train_config {
  size_t batch_size;
  unsigned epochs;
  double learning_rate;
  double temperature;
  unsigned clause_width;
  uint64_t seed;
  gs_batch_select batch_select;
  double adam_beta1;
  double adam_beta2;
  double adam_eps;
  unsigned threads;
} gs_train_config;

GS_API void gs_train_config_default(gs_train_config* cfg);

typedef struct gs_train_result gs_train_result;

GS_API gs_status gs_train(const gs_normalized* norm, const gs_train_config* cfg,
                          gs_train_result** out);
GS_API uint32_t gs_train_result_original_vars(const gs_train_result* r);
GS_API uint32_t gs_train_result_total_vars(const gs_train_result* r);
GS_API size_t gs_train_result_selected_batch(const gs_train_result* r);
GS_API size_t gs_train_result_batch_size(const gs_train_result* r);
/* Row-major total_vars x 2. */
GS_API gs_status gs_train_result_theta(const gs_train_result* r, double* out, size_t len);
GS_API gs_status gs_train_result_losses(const gs_train_result* r, double* out, size_t len);
GS_API gs_status gs_train_result_to_json(const gs_train_result* r, const gs_train_config* cfg,
                                         char** out_json);
/* cfg_out may be NULL. */
GS_API gs_status gs_train_result_from_json(const char* json, gs_train_result** out,
                                           gs_train_config* cfg_out);
GS_API void gs_train_result_free(gs_train_result* r);

/* ---- Candidate pools and cubes ----------------------------------------- */

typedef struct gs_pool_config {
  size_t pool_size;
  double rho;
  double temperature;
  uint64_t seed; /* training seed; the pool stream is derived from it as gs_run does */
} gs_pool_config;

GS_API void gs_pool_config_default(gs_pool_config* cfg);

typedef struct gs_jobs gs_jobs;

/* N augmented formulas (the unmodified anchor is not included). */
GS_API gs_status gs_pool_build(const gs_cnf* cnf, const gs_train_result* trained,
                               const gs_pool_config* cfg, gs_jobs** out);
/* 2^d formulas in cube-index order. */
GS_API gs_status gs_cubes_build(const gs_cnf* cnf, const gs_train_result* trained, unsigned d,
                                double temperature, gs_jobs** out);
GS_API size_t gs_jobs_count(const gs_jobs* jobs);
GS_API const gs_cnf* gs_jobs_cnf(const gs_jobs* jobs, size_t i);
/* Number of unit literals job i adds, and a copy of them. */
GS_API size_t gs_jobs_units(const gs_jobs* jobs, size_t i, int64_t* out, size_t len);
/* Writes one DIMACS file per job plus manifest.json into dir. */
GS_API gs_status gs_jobs_write_dir(const gs_jobs* jobs, const char* dir, const char* source_name);
GS_API void gs_jobs_free(gs_jobs* jobs);

/* ---- Solving ------------------------------------------------------------ */

typedef enum gs_run_mode { GS_MODE_SAT = 0, GS_MODE_UNSAT = 1, GS_MODE_AUTO = 2 } gs_run_mode;

typedef struct gs_run_config {
  gs_train_config train;
  size_t pool_size;
  double rho;
  unsigned depth;
  gs_run_mode mode;
  unsigned workers;
  double timeout_secs;
  /* "internal" (or NULL) or "external:<path> [args...]". */
  const char* backend;
} gs_run_config;

GS_API void gs_run_config_default(gs_run_config* cfg);

typedef struct gs_result gs_result;

/* Runs the built-in CDCL solver alone. timeout_secs <= 0 means no limit. */
GS_API gs_status gs_solve(const gs_cnf* cnf, double timeout_secs, gs_result** out);
/* Full flow: normalize, train, build job sets, solve in parallel. */
GS_API gs_status gs_run(const gs_cnf* cnf, const gs_run_config* cfg, gs_result** out);
GS_API gs_outcome gs_result_outcome(const gs_result* r);
/* Copies min(len, num_vars) model bits; returns num_vars (0 unless SAT). */
GS_API size_t gs_result_model(const gs_result* r, uint8_t* out, size_t len);
GS_API double gs_result_wall_time(const gs_result* r);
GS_API gs_status gs_result_log_json(const gs_result* r, const char* instance, char** out_json);
GS_API void gs_result_free(gs_result* r);

/* ---- Benchmarking ------------------------------------------------------- */

typedef struct gs_bench_config {
  gs_run_config run;
  int time_source_work; /* report deterministic work units instead of wall time */
  int cpu_only_par2;
  int pool_eval;
  unsigned instance_jobs;
  const char* labels_path; /* may be NULL */
  const char* csv_out;     /* may be NULL */
  const char* json_out;    /* may be NULL */
} gs_bench_config;

GS_API void gs_bench_config_default(gs_bench_config* cfg);

typedef struct gs_bench_report gs_bench_report;

/* On GS_ERR_LABEL_MISMATCH *out is still set to the completed report. */
GS_API gs_status gs_bench(const char* dir, const gs_bench_config* cfg, gs_bench_report** out);
GS_API size_t gs_bench_report_count(const gs_bench_report* r);
GS_API size_t gs_bench_report_solved(const gs_bench_report* r);
GS_API double gs_bench_report_avg_par2(const gs_bench_report* r);
GS_API gs_status gs_bench_report_csv(const gs_bench_report* r, char** out);
GS_API gs_status gs_bench_report_json(const gs_bench_report* r, char** out);
GS_API void gs_bench_report_free(gs_bench_report* r);

GS_API double gs_par2_score(gs_outcome outcome, double wall_time, double timeout_secs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GALOISSAT_H */
