#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "greedyopt/config.hpp"
#include "greedyopt/errors.hpp"
#include "greedyopt/greedy.hpp"
#include "greedyopt/problems.hpp"
#include "greedyopt/stochastic.hpp"

namespace greedyopt {

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? real(*v) : std::string(); }

Schedules deterministic_schedules(const RunConfig& cfg) {
  Rule eta = cfg.eta == "power" ? rules::power(cfg.q, 0) : rules::standard_eta();
  Rule eps = rules::zero();
  if (cfg.eps == "c-linked") eps = rules::scaled(cfg.c, eta);
  else if (cfg.eps == "power") eps = rules::power(cfg.eps_power, 0);
  else if (cfg.eps == "corollary") eps = rules::corollary_abs(cfg.c);
  return {eta, eps};
}

StochasticSchedules stochastic_schedules(const RunConfig& cfg) {
  const long t = cfg.horizon();
  StochasticSchedules s;
  if (cfg.eta == "power") {
    s.eta = rules::power(cfg.q, 1);
  } else if (cfg.eta == "horizon") {
    s.eta = rules::constant(1.0 / std::sqrt(static_cast<double>(t)));
  } else if (cfg.eta == "anytime") {
    s.eta = rules::power(0.5, 1);
  } else {
    s.eta = rules::standard_eta();
  }
  if (cfg.batch == "horizon") s.batch = rules::constant(static_cast<double>(t));
  else if (cfg.batch == "anytime") s.batch = {"k", [](long k) { return static_cast<double>(k); }};
  else if (cfg.batch == "fixed") s.batch = rules::constant(static_cast<double>(cfg.b));
  else s.batch = rules::constant(1.0);
  if (cfg.eps == "c-linked") s.eps = rules::scaled(cfg.c, s.eta);
  else if (cfg.eps == "power") s.eps = rules::power(cfg.eps_power, 1);
  else s.eps = rules::zero();
  s.sigma = rules::zero();
  return s;
}

// Every row with a known optimum must satisfy 0 <= err <= gap up to rounding.
std::optional<std::string> check_rows(const Trace& trace, double f_star) {
  const double tol = 1e-8 * std::max(1.0, std::abs(f_star));
  for (const auto& r : trace.records) {
    if (!r.err) continue;
    if (*r.err < -tol) return "err < 0 at k = " + std::to_string(r.k) + " (" + real(*r.err) + ")";
    if (*r.err > r.gap + tol) return "err > gap at k = " + std::to_string(r.k);
  }
  return std::nullopt;
}

struct ReplicaRun {
  Trace trace;
  std::optional<std::string> failed;
};

ReplicaRun run_replica(const RunConfig& cfg, const ProblemInstance& inst, std::uint64_t seed) {
  ReplicaRun out;
  const auto& alg = cfg.algorithm;
  if (alg == "jones" || alg == "fw" || alg == "mixed") {
    DeterministicOptions o;
    o.T = cfg.T;
    o.mode = cfg.oracle_mode;
    o.seed = seed;
    o.f_star = inst.f_star;
    o.problem_id = cfg.problem;
    const Algorithm a = alg == "fw"         ? Algorithm::frank_wolfe()
                        : alg == "mixed"    ? Algorithm::mixed(cfg.mix_period)
                        : cfg.eta == "line" ? Algorithm::jones_joint()
                                            : Algorithm::jones();
    out.trace = run_deterministic(*inst.fsum, inst.atoms, inst.start, deterministic_schedules(cfg), a, o);
  } else if (alg == "asj" || alg == "asfw") {
    StochasticOptions o;
    o.T = cfg.T;
    o.seed = seed;
    o.mode = cfg.oracle_mode;
    o.f_star = inst.f_star;
    o.start = inst.start;
    o.problem_id = cfg.problem;
    const StochasticSchedules s = stochastic_schedules(cfg);
    out.trace = alg == "asj" ? asj_run(*inst.fsum, inst.atoms, s,
                                       cfg.inner_mode == "fixed_eta" ? AsjInner::FixedEta : AsjInner::ExactJoint, o)
                             : asfw_run(*inst.fsum, inst.atoms, s, o);
  } else {
    ArsfwOptions o;
    o.T = cfg.T;
    o.seed = seed;
    o.sigma_mode = cfg.sigma == "fixed" ? SigmaMode::Fixed : SigmaMode::Varying;
    o.sigma_horizon = cfg.horizon();
    o.mode = cfg.oracle_mode;
    o.f_star = inst.f_star;
    o.w1 = inst.start;
    o.problem_id = cfg.problem;
    ArsfwRun run = arsfw_run(*inst.fsum, inst.atoms, {cfg.p, cfg.c, cfg.lambda}, o);
    if (run.ball_domain) {
      const KBoundReport kb = k_bound_report(run, inst.constants.lipschitz);
      if (!kb.holds) out.failed = "e_k > K eta_k at k = " + std::to_string(kb.worst_k);
      if (inst.w_star && !out.failed) {
        const LazyBoundReport lz = lazy_bound_report(run, *inst.w_star);
        if (!lz.holds) out.failed = "lazy regret inequality fails at t = " + std::to_string(lz.worst_t);
      }
    }
    out.trace = std::move(run.trace);
  }
  if (inst.f_star && !out.failed) out.failed = check_rows(out.trace, *inst.f_star);
  return out;
}

}  // namespace

Trace run_config_replica(const RunConfig& cfg, const ProblemInstance& inst, std::uint64_t seed) {
  return run_replica(cfg, inst, seed).trace;
}

const char* csv_header() { return "k,eta,eps,b,sigma,f_w,f_avg,gap,err,replica,seed"; }

std::string trace_csv_rows(const Trace& trace, long replica, std::uint64_t seed) {
  std::string out;
  char tail[64];
  std::snprintf(tail, sizeof tail, ",%ld,%" PRIu64 "\n", replica, seed);
  for (const auto& r : trace.records) {
    out += std::to_string(r.k);
    out += ',' + opt(r.eta) + ',' + real(r.eps) + ',' + opt(r.batch) + ',' + opt(r.sigma) + ',' + real(r.f_w) + ',' +
           opt(r.f_avg) + ',' + real(r.gap) + ',' + opt(r.err);
    out += tail;
  }
  return out;
}

bool ExecuteReport::ok() const {
  for (const auto& r : replicas) {
    if (!r.assertions_ok) return false;
  }
  return !replicas.empty();
}

ExecuteReport execute(const RunConfig& cfg, const LineSink& summary) {
  const ProblemInstance inst = make_problem(cfg.problem);
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open output file '" + cfg.output + "'");

  std::string csv = std::string(csv_header()) + "\n";
  ExecuteReport report;
  for (long i = 0; i < cfg.replicas; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    ReplicaRun run = run_replica(cfg, inst, seed);
    csv += trace_csv_rows(run.trace, i, seed);

    const TraceRecord& last = run.trace.back();
    ReplicaSummary s;
    s.replica = i;
    s.seed = seed;
    s.f = last.f_w;
    s.gap = last.gap;
    s.err = last.err;
    s.assertions_ok = !run.failed;
    if (run.failed) s.failed_assertion = *run.failed;
    report.replicas.push_back(s);

    if (summary) {
      std::string line = "replica " + std::to_string(i) + " seed " + std::to_string(seed) + ": f = " + real(s.f) +
                         " gap = " + real(s.gap);
      if (s.err) line += " err = " + real(*s.err);
      if (run.failed) line += " ASSERTION FAILED: " + *run.failed;
      summary(line);
    }
  }

  file << csv;
  file.flush();
  if (!file) throw Error(ErrorCode::IoError, "error writing output file '" + cfg.output + "'");

  if (summary) {
    const bool use_err = std::all_of(report.replicas.begin(), report.replicas.end(), [](const auto& r) { return r.err.has_value(); });
    const double n = static_cast<double>(report.replicas.size());
    double sum = 0.0;
    for (const auto& r : report.replicas) sum += use_err ? *r.err : r.f;
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : report.replicas) {
      const double d = (use_err ? *r.err : r.f) - mean;
      ss += d * d;
    }
    const double sd = report.replicas.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    summary(std::string("mean ") + (use_err ? "err" : "f") + " = " + real(mean) + " stddev = " + real(sd) + " over " +
            std::to_string(report.replicas.size()) + " replicas");
  }
  return report;
}

}  // namespace greedyopt
