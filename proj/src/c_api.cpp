#include "greedyopt/greedyopt.h"

#include <memory>
#include <string>

#include "greedyopt/checks.hpp"
#include "greedyopt/config.hpp"
#include "greedyopt/core.hpp"
#include "greedyopt/errors.hpp"
#include "greedyopt/problems.hpp"
#include "greedyopt/recurrence.hpp"

struct gopt_atoms {
  greedyopt::AtomSet set;
};

struct gopt_problem {
  greedyopt::ProblemInstance instance;
  gopt_atoms atoms;
};

struct gopt_config {
  greedyopt::RunConfig config;
};

struct gopt_trace {
  greedyopt::Trace trace;
};

namespace {

thread_local std::string last_error;

gopt_status status_of(greedyopt::ErrorCode code) {
  using greedyopt::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidInput: return GOPT_INVALID_INPUT;
    case ErrorCode::UnsupportedDomain: return GOPT_UNSUPPORTED_DOMAIN;
    case ErrorCode::InvalidSchedule: return GOPT_INVALID_SCHEDULE;
    case ErrorCode::InvalidParams: return GOPT_INVALID_PARAMS;
    case ErrorCode::PreconditionViolation: return GOPT_PRECONDITION_VIOLATION;
    case ErrorCode::OracleFailure: return GOPT_ORACLE_FAILURE;
    case ErrorCode::ParseError: return GOPT_PARSE_ERROR;
    case ErrorCode::IoError: return GOPT_IO_ERROR;
  }
  return GOPT_INTERNAL_ERROR;
}

gopt_status fail(gopt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs f, mapping exceptions to status codes and the thread's last error.
template <class F>
gopt_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const greedyopt::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GOPT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(GOPT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(GOPT_INTERNAL_ERROR, "unknown error");
  }
}

#define GOPT_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) return fail(GOPT_INVALID_INPUT, msg); \
  } while (0)

greedyopt::Point to_point(const double* v, size_t dim) {
  greedyopt::Point p(static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < dim; ++i) p[static_cast<Eigen::Index>(i)] = v[i];
  return p;
}

void from_point(const greedyopt::Point& p, double* out) {
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = p[i];
}

void emit(gopt_line_fn fn, void* user, const std::string& line) {
  if (fn) fn(line.c_str(), user);
}

}  // namespace

extern "C" {

const char* gopt_last_error(void) { return last_error.c_str(); }

const char* gopt_status_name(gopt_status status) {
  switch (status) {
    case GOPT_OK: return "ok";
    case GOPT_INVALID_INPUT: return "invalid-input";
    case GOPT_UNSUPPORTED_DOMAIN: return "unsupported-domain";
    case GOPT_INVALID_SCHEDULE: return "invalid-schedule";
    case GOPT_INVALID_PARAMS: return "invalid-params";
    case GOPT_PRECONDITION_VIOLATION: return "precondition-violation";
    case GOPT_ORACLE_FAILURE: return "oracle-failure";
    case GOPT_PARSE_ERROR: return "parse-error";
    case GOPT_IO_ERROR: return "io-error";
    case GOPT_CHECK_FAILED: return "check-failed";
    case GOPT_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown-status";
}

// ---- atoms -----------------------------------------------------------------

gopt_status gopt_atoms_finite(const double* coords, size_t count, size_t dim, gopt_atoms** out) {
  GOPT_REQUIRE(out != nullptr, "out must not be NULL");
  GOPT_REQUIRE(coords != nullptr || count == 0, "coords must not be NULL");
  return guarded([&] {
    std::vector<greedyopt::Point> atoms;
    for (size_t i = 0; i < count; ++i) atoms.push_back(to_point(coords + i * dim, dim));
    *out = new gopt_atoms{greedyopt::AtomSet::finite(std::move(atoms))};
    return GOPT_OK;
  });
}

gopt_status gopt_atoms_ball(const double* center, size_t dim, double radius, gopt_atoms** out) {
  GOPT_REQUIRE(out != nullptr && center != nullptr, "center and out must not be NULL");
  return guarded([&] {
    *out = new gopt_atoms{greedyopt::AtomSet::ball(to_point(center, dim), radius)};
    return GOPT_OK;
  });
}

void gopt_atoms_destroy(gopt_atoms* atoms) { delete atoms; }

size_t gopt_atoms_dim(const gopt_atoms* atoms) { return atoms ? atoms->set.dim() : 0; }

gopt_status gopt_lmo(const gopt_atoms* atoms, const double* g, size_t dim, double* d_out, double* value_out) {
  GOPT_REQUIRE(atoms && g && d_out, "atoms, g and d_out must not be NULL");
  return guarded([&] {
    const auto r = greedyopt::lmo(atoms->set, to_point(g, dim));
    from_point(r.d, d_out);
    if (value_out) *value_out = r.value;
    return GOPT_OK;
  });
}

gopt_status gopt_approx_lmo(const gopt_atoms* atoms, const double* g, size_t dim, double eps, const char* mode,
                            uint64_t seed, double* d_out, double* value_out) {
  GOPT_REQUIRE(atoms && g && d_out && mode, "atoms, g, mode and d_out must not be NULL");
  return guarded([&] {
    greedyopt::Rng rng(seed, 1);
    const auto r = greedyopt::approx_lmo(atoms->set, to_point(g, dim), eps, greedyopt::oracle_mode_from_string(mode), &rng);
    from_point(r.d, d_out);
    if (value_out) *value_out = r.value;
    return GOPT_OK;
  });
}

// ---- problems --------------------------------------------------------------

gopt_status gopt_problem_create(const char* id, gopt_problem** out) {
  GOPT_REQUIRE(id && out, "id and out must not be NULL");
  return guarded([&] {
    auto inst = greedyopt::make_problem(id);
    gopt_atoms atoms{inst.atoms};
    *out = new gopt_problem{std::move(inst), std::move(atoms)};
    return GOPT_OK;
  });
}

void gopt_problem_destroy(gopt_problem* problem) { delete problem; }

size_t gopt_problem_dim(const gopt_problem* problem) { return problem ? problem->instance.fsum->dim() : 0; }

size_t gopt_problem_size(const gopt_problem* problem) { return problem ? problem->instance.fsum->size() : 0; }

gopt_status gopt_problem_value(const gopt_problem* problem, const double* w, size_t dim, double* out) {
  GOPT_REQUIRE(problem && w && out, "problem, w and out must not be NULL");
  return guarded([&] {
    const auto p = to_point(w, dim);
    greedyopt::require_point(p, "w");
    if (dim != problem->instance.fsum->dim()) throw greedyopt::Error(greedyopt::ErrorCode::InvalidInput, "w has the wrong dimension");
    *out = problem->instance.fsum->value(p);
    return GOPT_OK;
  });
}

gopt_status gopt_problem_gradient(const gopt_problem* problem, const double* w, size_t dim, double* out) {
  GOPT_REQUIRE(problem && w && out, "problem, w and out must not be NULL");
  return guarded([&] {
    const auto p = to_point(w, dim);
    greedyopt::require_point(p, "w");
    if (dim != problem->instance.fsum->dim()) throw greedyopt::Error(greedyopt::ErrorCode::InvalidInput, "w has the wrong dimension");
    from_point(problem->instance.fsum->gradient(p), out);
    return GOPT_OK;
  });
}

gopt_status gopt_problem_constants(const gopt_problem* problem, gopt_constants* out) {
  GOPT_REQUIRE(problem && out, "problem and out must not be NULL");
  const auto& c = problem->instance.constants;
  *out = {c.smoothness, c.diameter, c.curvature, c.component_curvature, c.lipschitz};
  return GOPT_OK;
}

gopt_status gopt_problem_optimum(const gopt_problem* problem, double* w_out, size_t dim, double* f_out) {
  GOPT_REQUIRE(problem, "problem must not be NULL");
  const auto& inst = problem->instance;
  if (!inst.w_star || !inst.f_star) return fail(GOPT_INVALID_INPUT, "problem has no known optimum");
  GOPT_REQUIRE(w_out == nullptr || dim == static_cast<size_t>(inst.w_star->size()), "w_out has the wrong dimension");
  if (w_out) from_point(*inst.w_star, w_out);
  if (f_out) *f_out = *inst.f_star;
  return GOPT_OK;
}

const gopt_atoms* gopt_problem_atoms(const gopt_problem* problem) { return problem ? &problem->atoms : nullptr; }

gopt_status gopt_list_problems(gopt_line_fn fn, void* user) {
  return guarded([&] {
    for (const auto& p : greedyopt::list_problems()) emit(fn, user, p.id + "  " + p.description);
    return GOPT_OK;
  });
}

// ---- recurrences -----------------------------------------------------------

gopt_status gopt_compute_K(double rho, double p, double lambda, double R2, double c, double L, double* out) {
  GOPT_REQUIRE(out, "out must not be NULL");
  return guarded([&] {
    *out = greedyopt::recurrence::compute_K(rho, p, lambda, R2, c, L);
    return GOPT_OK;
  });
}

gopt_status gopt_verify_lower_bound(double e0, double C, long T, int* holds) {
  GOPT_REQUIRE(holds, "holds must not be NULL");
  return guarded([&] {
    *holds = greedyopt::recurrence::verify_lower_bound(e0, C, T) ? 1 : 0;
    return GOPT_OK;
  });
}

// ---- configured runs -------------------------------------------------------

gopt_status gopt_config_parse(const char* text, gopt_config** out) {
  GOPT_REQUIRE(text && out, "text and out must not be NULL");
  return guarded([&] {
    *out = new gopt_config{greedyopt::parse_config(text)};
    return GOPT_OK;
  });
}

gopt_status gopt_config_load(const char* path, gopt_config** out) {
  GOPT_REQUIRE(path && out, "path and out must not be NULL");
  return guarded([&] {
    *out = new gopt_config{greedyopt::load_config(path)};
    return GOPT_OK;
  });
}

void gopt_config_destroy(gopt_config* config) { delete config; }

long gopt_config_replicas(const gopt_config* config) { return config ? config->config.replicas : 0; }

gopt_status gopt_execute(const gopt_config* config, gopt_line_fn fn, void* user) {
  GOPT_REQUIRE(config, "config must not be NULL");
  return guarded([&] {
    const auto report = greedyopt::execute(config->config, [&](const std::string& line) { emit(fn, user, line); });
    if (!report.ok()) return fail(GOPT_CHECK_FAILED, "an in-run assertion failed");
    return GOPT_OK;
  });
}

gopt_status gopt_run_replica(const gopt_config* config, long replica, gopt_trace** out) {
  GOPT_REQUIRE(config && out, "config and out must not be NULL");
  GOPT_REQUIRE(replica >= 0, "replica must be >= 0");
  return guarded([&] {
    const auto inst = greedyopt::make_problem(config->config.problem);
    auto trace = greedyopt::run_config_replica(config->config, inst, config->config.seed + static_cast<uint64_t>(replica));
    *out = new gopt_trace{std::move(trace)};
    return GOPT_OK;
  });
}

void gopt_trace_destroy(gopt_trace* trace) { delete trace; }

size_t gopt_trace_length(const gopt_trace* trace) { return trace ? trace->trace.records.size() : 0; }

gopt_status gopt_trace_record(const gopt_trace* trace, size_t i, gopt_record* out) {
  GOPT_REQUIRE(trace && out, "trace and out must not be NULL");
  GOPT_REQUIRE(i < trace->trace.records.size(), "record index out of range");
  const auto& r = trace->trace.records[i];
  *out = gopt_record{};
  out->k = r.k;
  out->eps = r.eps;
  out->f_w = r.f_w;
  out->gap = r.gap;
  if (r.eta) out->eta = *r.eta, out->has_eta = 1;
  if (r.batch) out->batch = *r.batch, out->has_batch = 1;
  if (r.sigma) out->sigma = *r.sigma, out->has_sigma = 1;
  if (r.f_avg) out->f_avg = *r.f_avg, out->has_f_avg = 1;
  if (r.err) out->err = *r.err, out->has_err = 1;
  return GOPT_OK;
}

gopt_status gopt_trace_final(const gopt_trace* trace, double* w_out, size_t dim) {
  GOPT_REQUIRE(trace && w_out, "trace and w_out must not be NULL");
  GOPT_REQUIRE(dim == static_cast<size_t>(trace->trace.final_w.size()), "w_out has the wrong dimension");
  from_point(trace->trace.final_w, w_out);
  return GOPT_OK;
}

// ---- checks ----------------------------------------------------------------

gopt_status gopt_verify_names(gopt_line_fn fn, void* user) {
  return guarded([&] {
    for (const auto& n : greedyopt::checks::check_names()) emit(fn, user, n);
    return GOPT_OK;
  });
}

gopt_status gopt_verify_defaults(const char* name, gopt_line_fn fn, void* user) {
  GOPT_REQUIRE(name, "name must not be NULL");
  return guarded([&] {
    for (const auto& [k, v] : greedyopt::checks::check_defaults(name)) emit(fn, user, k + "=" + v);
    return GOPT_OK;
  });
}

gopt_status gopt_verify(const char* name, const char* const* keys, const char* const* values, size_t n,
                        gopt_line_fn result_fn, gopt_line_fn progress_fn, void* user) {
  GOPT_REQUIRE(name, "name must not be NULL");
  GOPT_REQUIRE(n == 0 || (keys && values), "keys and values must not be NULL");
  return guarded([&] {
    greedyopt::checks::CheckParams params;
    for (size_t i = 0; i < n; ++i) {
      if (!keys[i] || !values[i]) throw greedyopt::Error(greedyopt::ErrorCode::InvalidInput, "NULL parameter entry");
      params[keys[i]] = values[i];
    }
    greedyopt::checks::ProgressSink progress;
    if (progress_fn) progress = [&](const std::string& line) { emit(progress_fn, user, line); };
    const auto result = greedyopt::checks::run_check(name, params, progress);
    for (const auto& line : result.lines) emit(result_fn, user, greedyopt::checks::format_line(result.name, line));
    if (!result.pass()) return fail(GOPT_CHECK_FAILED, "verify " + std::string(name) + ": at least one assertion failed");
    return GOPT_OK;
  });
}

}  // extern "C"
