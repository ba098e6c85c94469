/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef CCRELAX_CCRELAX_H
#define CCRELAX_CCRELAX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CCR_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CCR_API __attribute__((visibility("default")))
#else
#define CCR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum ccr_status {
  CCR_OK = 0,
  CCR_ERROR = 1,       /* unexpected internal error */
  CCR_USAGE = 2,       /* invalid argument, file or domain error */
  CCR_INFEASIBLE = 3,
  CCR_NUMERICAL = 4
} ccr_status;

typedef struct ccr_instance ccr_instance;
typedef struct ccr_result ccr_result;

/* Message of the last failed call on this thread ("" if none). */
CCR_API const char* ccr_last_error(void);
CCR_API const char* ccr_version(void);

/* measure: "VaR", "CVaR", "RVaR" or "RCVaR" (case-insensitive). */
CCR_API ccr_status ccr_risk_coefficient(const char* measure, double beta, double* out);

/* ---- instances ---------------------------------------------------------- */

/* kappa <= 0 selects the default max(1, n / 10). */
CCR_API ccr_status ccr_instance_generate(int n, uint64_t seed, int kappa, ccr_instance** out);
/* cov is row-major n x n; ubound may be NULL (all ones). */
CCR_API ccr_status ccr_instance_create(int n, const double* mean, const double* cov,
                                       const double* ubound, int kappa, ccr_instance** out);
CCR_API ccr_status ccr_instance_load(const char* path, ccr_instance** out);
CCR_API ccr_status ccr_instance_save(const ccr_instance* inst, const char* path);
CCR_API ccr_status ccr_instance_set_kappa(ccr_instance* inst, int kappa);
CCR_API int ccr_instance_n(const ccr_instance* inst);
CCR_API int ccr_instance_kappa(const ccr_instance* inst);
CCR_API void ccr_instance_free(ccr_instance* inst);

/* ---- solving ------------------------------------------------------------ */

typedef struct ccr_solve_options {
  double t0;
  double shrink;
  double tol_comp;
  double t_floor;
  int polish; /* nonzero: polish the support before reporting */
} ccr_solve_options;

CCR_API void ccr_solve_options_default(ccr_solve_options* opts);

/* method: scholtes_01, scholtes_00, kanzow-schwartz_01, kanzow-schwartz_00,
 * direct_01, direct_00 or oracle. opts may be NULL. A run that completes
 * returns CCR_OK even when its point is infeasible; check
 * ccr_result_feasible. Failed runs still produce a result handle. */
CCR_API ccr_status ccr_solve(const ccr_instance* inst, const char* method,
                             const char* measure, double beta,
                             const ccr_solve_options* opts, ccr_result** out);

CCR_API double ccr_result_objective(const ccr_result* r);
CCR_API double ccr_result_time_ms(const ccr_result* r);
CCR_API int ccr_result_cardinality(const ccr_result* r);
CCR_API int ccr_result_feasible(const ccr_result* r);
/* Failure class of the run: CCR_OK when it completed. */
CCR_API ccr_status ccr_result_failure(const ccr_result* r);
CCR_API const char* ccr_result_status(const ccr_result* r);
/* "S", "M", "None" or "" when not classified. */
CCR_API const char* ccr_result_stationarity(const ccr_result* r);
CCR_API int ccr_result_n(const ccr_result* r);
/* Copy x (or y) into buf of length len >= n. y is empty for the oracle. */
CCR_API ccr_status ccr_result_x(const ccr_result* r, double* buf, size_t len);
CCR_API ccr_status ccr_result_y(const ccr_result* r, double* buf, size_t len);
CCR_API int ccr_result_num_steps(const ccr_result* r);
CCR_API ccr_status ccr_result_step(const ccr_result* r, int index, double* t,
                                   double* objective, double* complementarity);
/* One CSV line (no header) in the records format. */
CCR_API const char* ccr_result_record_csv(const ccr_result* r);
CCR_API ccr_status ccr_result_write_json(const ccr_result* r, const char* path);
CCR_API void ccr_result_free(ccr_result* r);

/* ---- experiments -------------------------------------------------------- */

CCR_API const char* ccr_records_header(void);
CCR_API ccr_status ccr_bench_run(const char* config_path, const char* out_dir);
CCR_API ccr_status ccr_profile_file(const char* records_path, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* CCRELAX_CCRELAX_H */
