/*
 * C interface to the greedyopt library.
 *
 * Every function returns a gopt_status. On failure the message is available
 * from gopt_last_error() on the calling thread until the next call from that
 * thread. Handles are opaque and owned by the caller; destroy functions
 * accept NULL.
 */
#ifndef GREEDYOPT_H
#define GREEDYOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GOPT_API __declspec(dllexport)
#else
#define GOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gopt_status {
  GOPT_OK = 0,
  GOPT_INVALID_INPUT = 1,
  GOPT_UNSUPPORTED_DOMAIN = 2,
  GOPT_INVALID_SCHEDULE = 3,
  GOPT_INVALID_PARAMS = 4,
  GOPT_PRECONDITION_VIOLATION = 5,
  GOPT_ORACLE_FAILURE = 6,
  GOPT_PARSE_ERROR = 7,
  GOPT_IO_ERROR = 8,
  GOPT_CHECK_FAILED = 20, /* ran to completion but an assertion did not hold */
  GOPT_INTERNAL_ERROR = 99
} gopt_status;

GOPT_API const char* gopt_last_error(void);
GOPT_API const char* gopt_status_name(gopt_status status);

/* Receives one line of output (no trailing newline). */
typedef void (*gopt_line_fn)(const char* line, void* user);

/* ---- atom sets and oracles ------------------------------------------- */

typedef struct gopt_atoms gopt_atoms;

/* `coords` holds `count` atoms of `dim` coordinates each, row-major. */
GOPT_API gopt_status gopt_atoms_finite(const double* coords, size_t count, size_t dim, gopt_atoms** out);
GOPT_API gopt_status gopt_atoms_ball(const double* center, size_t dim, double radius, gopt_atoms** out);
GOPT_API void gopt_atoms_destroy(gopt_atoms* atoms);
GOPT_API size_t gopt_atoms_dim(const gopt_atoms* atoms);

/* Exact oracle: d_out (dim entries) minimizes g^T d over the atoms. */
GOPT_API gopt_status gopt_lmo(const gopt_atoms* atoms, const double* g, size_t dim, double* d_out, double* value_out);

/* eps-approximate oracle. mode is "exact", "adversarial" or "seeded-random". */
GOPT_API gopt_status gopt_approx_lmo(const gopt_atoms* atoms, const double* g, size_t dim, double eps, const char* mode,
                                     uint64_t seed, double* d_out, double* value_out);

/* ---- problems ---------------------------------------------------------- */

typedef struct gopt_problem gopt_problem;

typedef struct gopt_constants {
  double smoothness;
  double diameter;
  double curvature;
  double component_curvature;
  double lipschitz;
} gopt_constants;

/* id as accepted by `greedy-opt list-problems`, e.g. "asfw-triangle-biased(r=0.5)". */
GOPT_API gopt_status gopt_problem_create(const char* id, gopt_problem** out);
GOPT_API void gopt_problem_destroy(gopt_problem* problem);
GOPT_API size_t gopt_problem_dim(const gopt_problem* problem);
GOPT_API size_t gopt_problem_size(const gopt_problem* problem);
GOPT_API gopt_status gopt_problem_value(const gopt_problem* problem, const double* w, size_t dim, double* out);
GOPT_API gopt_status gopt_problem_gradient(const gopt_problem* problem, const double* w, size_t dim, double* out);
GOPT_API gopt_status gopt_problem_constants(const gopt_problem* problem, gopt_constants* out);
/* GOPT_INVALID_INPUT when the instance carries no optimum. */
GOPT_API gopt_status gopt_problem_optimum(const gopt_problem* problem, double* w_out, size_t dim, double* f_out);
/* Borrowed view of the problem's domain, valid while the problem lives. */
GOPT_API const gopt_atoms* gopt_problem_atoms(const gopt_problem* problem);

/* One "id  description" line per shipped problem. */
GOPT_API gopt_status gopt_list_problems(gopt_line_fn fn, void* user);

/* ---- recurrences -------------------------------------------------------- */

GOPT_API gopt_status gopt_compute_K(double rho, double p, double lambda, double R2, double c, double L, double* out);
/* *holds = 1 when e_k (k + 2) >= min(e0, C) along the greedy sequence. */
GOPT_API gopt_status gopt_verify_lower_bound(double e0, double C, long T, int* holds);

/* ---- configured runs -------------------------------------------------- */

typedef struct gopt_config gopt_config;

GOPT_API gopt_status gopt_config_parse(const char* text, gopt_config** out);
GOPT_API gopt_status gopt_config_load(const char* path, gopt_config** out);
GOPT_API void gopt_config_destroy(gopt_config* config);
GOPT_API long gopt_config_replicas(const gopt_config* config);

/* Runs every replica, writes the CSV to the configured output and sends the
   summary lines to fn. GOPT_CHECK_FAILED when an in-run assertion fails. */
GOPT_API gopt_status gopt_execute(const gopt_config* config, gopt_line_fn fn, void* user);

typedef struct gopt_trace gopt_trace;

typedef struct gopt_record {
  long k;
  double eta, eps, batch, sigma, f_w, f_avg, gap, err;
  int has_eta, has_batch, has_sigma, has_f_avg, has_err;
} gopt_record;

/* A single replica of the configured run, seeded with seed + replica. */
GOPT_API gopt_status gopt_run_replica(const gopt_config* config, long replica, gopt_trace** out);
GOPT_API void gopt_trace_destroy(gopt_trace* trace);
GOPT_API size_t gopt_trace_length(const gopt_trace* trace);
GOPT_API gopt_status gopt_trace_record(const gopt_trace* trace, size_t i, gopt_record* out);
/* Final iterate (dim entries). */
GOPT_API gopt_status gopt_trace_final(const gopt_trace* trace, double* w_out, size_t dim);

/* ---- verification checks ---------------------------------------------- */

/* Names of the checks, one per line. */
GOPT_API gopt_status gopt_verify_names(gopt_line_fn fn, void* user);
/* "key=value" default parameter lines of a check. */
GOPT_API gopt_status gopt_verify_defaults(const char* name, gopt_line_fn fn, void* user);
/* Runs a check with n parameter overrides. Result lines ("PASS ..." or
   "FAIL ...") go to result_fn, progress text to progress_fn (may be NULL).
   GOPT_CHECK_FAILED when any line fails. */
GOPT_API gopt_status gopt_verify(const char* name, const char* const* keys, const char* const* values, size_t n,
                                 gopt_line_fn result_fn, gopt_line_fn progress_fn, void* user);

#ifdef __cplusplus
}
#endif

#endif /* GREEDYOPT_H */
