#include "greedyopt/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "greedyopt/greedy.hpp"
#include "greedyopt/recurrence.hpp"

namespace greedyopt {

namespace presets {

StochasticSchedules asj_fixed_horizon(long t, double c) {
  if (t < 1) throw Error(ErrorCode::InvalidSchedule, "horizon t must be >= 1");
  const double eta = 1.0 / std::sqrt(static_cast<double>(t));
  Rule eta_rule{"horizon(" + std::to_string(t) + ")", [eta](long) { return eta; }};
  return {eta_rule, rules::scaled(c, eta_rule), {"horizon(" + std::to_string(t) + ")", [t](long) { return static_cast<double>(t); }},
          rules::zero()};
}

StochasticSchedules asj_anytime(double c) {
  Rule eta_rule = rules::power(0.5, 1);
  eta_rule.id = "anytime";
  return {eta_rule, rules::scaled(c, eta_rule), {"anytime", [](long k) { return static_cast<double>(k); }}, rules::zero()};
}

StochasticSchedules single_sample_standard(double c) {
  Rule eta_rule = rules::standard_eta();
  return {eta_rule, rules::scaled(c, eta_rule), {"one", [](long) { return 1.0; }}, rules::zero()};
}

StochasticSchedules arsfw(double p, double c, double lambda, double R2, double rho) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidSchedule, "p must lie in [0, 1]");
  if (!(lambda >= 1.0)) throw Error(ErrorCode::InvalidParams, "lambda must be >= 1");
  if (!(c >= 0.0)) throw Error(ErrorCode::InvalidParams, "c must be >= 0");
  Rule eta_rule = rules::power(p, 1);
  Rule sigma{"varying(" + std::to_string(c) + ")", [p, c](long k) { return c * std::pow(static_cast<double>(k), -1.5 * p); }};
  return {eta_rule, rules::scaled((lambda - 1.0) * R2 / rho, eta_rule), {"one", [](long) { return 1.0; }}, std::move(sigma)};
}

StochasticSchedules arsfw_fixed_sigma(long t, double p, double c, double lambda, double R2, double rho) {
  if (t < 1) throw Error(ErrorCode::InvalidSchedule, "horizon t must be >= 1");
  StochasticSchedules s = arsfw(p, c, lambda, R2, rho);
  const double sigma = c / std::pow(static_cast<double>(t), 0.75);
  s.sigma = {"fixed(" + std::to_string(t) + ")", [sigma](long) { return sigma; }};
  return s;
}

}  // namespace presets

namespace {

std::size_t batch_size(const Rule& batch, long k) {
  const double b = batch(k);
  if (!(b >= 1.0) || !std::isfinite(b)) throw Error(ErrorCode::InvalidSchedule, "batch(" + std::to_string(k) + ") must be >= 1");
  return static_cast<std::size_t>(std::llround(b));
}

double checked_eta(const Rule& eta, long k, bool allow_zero) {
  const double v = eta(k);
  if (!(v <= 1.0 && (allow_zero ? v >= 0.0 : v > 0.0))) {
    throw Error(ErrorCode::InvalidSchedule, "eta(" + std::to_string(k) + ") = " + std::to_string(v) + " outside (0, 1]");
  }
  return v;
}

void check_run(const FiniteSumObjective& fsum, const AtomSet& atoms, long T) {
  if (T < 1) throw Error(ErrorCode::InvalidInput, "T must be >= 1");
  if (fsum.dim() != atoms.dim()) throw Error(ErrorCode::InvalidInput, "objective and atom set differ in dimension");
}

TraceMeta stochastic_meta(const std::string& algorithm, const StochasticSchedules& s, const StochasticOptions& o) {
  TraceMeta m;
  m.problem = o.problem_id;
  m.algorithm = algorithm;
  m.seed = o.seed;
  m.eta_id = s.eta.id;
  m.eps_id = s.eps.id;
  m.batch_id = s.batch.id;
  m.sigma_id = s.sigma.id;
  m.index_base = 1;
  return m;
}

// Running weighted average sum_i a_i w_i / sum_i a_i.
class RunningAverage {
 public:
  explicit RunningAverage(std::size_t dim) : sum_(Point::Zero(static_cast<Eigen::Index>(dim))) {}
  void add(double weight, const Point& w) {
    sum_ += weight * w;
    total_ += weight;
  }
  Point value(const Point& fallback) const { return total_ > 0.0 ? Point(sum_ / total_) : fallback; }

 private:
  Point sum_;
  double total_ = 0.0;
};

TraceRecord make_record(const FiniteSumObjective& fsum, const AtomSet& atoms, long k, const Point& w, const Point& avg,
                        const std::optional<double>& f_star) {
  TraceRecord rec;
  rec.k = k;
  rec.f_w = fsum.value(w);
  if (!std::isfinite(rec.f_w)) throw Error(ErrorCode::InvalidInput, "objective is not finite along the run");
  rec.f_avg = fsum.value(avg);
  rec.gap = duality_gap(fsum, w, atoms);
  if (f_star) rec.err = rec.f_w - *f_star;
  return rec;
}

}  // namespace

std::vector<std::size_t> sample_minibatch(std::size_t n, std::size_t b, Rng& rng) {
  std::vector<std::size_t> idx(b);
  for (auto& i : idx) i = rng.uniform_index(n);
  return idx;
}

Trace asj_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const StochasticSchedules& sched, AsjInner inner,
              const StochasticOptions& options) {
  if (atoms.is_ball()) throw Error(ErrorCode::UnsupportedDomain, "asj_run: the Jones inner problem needs finite atoms");
  check_run(fsum, atoms, options.T);
  Trace trace;
  trace.meta = stochastic_meta(inner == AsjInner::ExactJoint ? "asj(exact_joint)" : "asj(fixed_eta)", sched, options);
  Rng index_rng(options.seed, 0);
  Rng oracle_rng(options.seed, 1);
  Point w = options.start.value_or(atoms.default_start());
  require_point(w, "start point");
  RunningAverage avg(atoms.dim());

  for (long k = 1; k <= options.T; ++k) {
    const std::size_t b = batch_size(sched.batch, k);
    MinibatchObjective batch(fsum, sample_minibatch(fsum.size(), b, index_rng));
    const double eps = sched.eps(k);
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidSchedule, "eps(" + std::to_string(k) + ") is negative");
    StepResult step = inner == AsjInner::ExactJoint
                          ? jones_step_joint(batch, atoms, w, 0.0, options.mode, &oracle_rng)
                          : jones_step(batch, atoms, w, checked_eta(sched.eta, k, false), eps, options.mode, &oracle_rng);
    avg.add(step.eta, w);
    TraceRecord rec = make_record(fsum, atoms, k, w, avg.value(w), options.f_star);
    rec.eta = step.eta;
    rec.eps = inner == AsjInner::ExactJoint ? 0.0 : eps;
    rec.batch = static_cast<double>(b);
    if (options.record_iterates) trace.iterates.push_back(w);
    trace.records.push_back(rec);
    w = std::move(step.w_next);
  }
  trace.final_w = w;
  trace.final_avg = avg.value(w);
  return trace;
}

Trace asfw_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const StochasticSchedules& sched,
               const StochasticOptions& options) {
  check_run(fsum, atoms, options.T);
  Trace trace;
  trace.meta = stochastic_meta("asfw", sched, options);
  Rng index_rng(options.seed, 0);
  Rng oracle_rng(options.seed, 1);
  Point w = options.start.value_or(atoms.default_start());
  require_point(w, "start point");
  RunningAverage avg(atoms.dim());

  for (long k = 1; k <= options.T; ++k) {
    const std::size_t b = batch_size(sched.batch, k);
    const auto idx = sample_minibatch(fsum.size(), b, index_rng);
    const double eta = checked_eta(sched.eta, k, true);
    const double eps = sched.eps(k);
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidSchedule, "eps(" + std::to_string(k) + ") is negative");
    const LmoResult d = approx_lmo(atoms, fsum.minibatch_gradient(idx, w), eps, options.mode, &oracle_rng);
    avg.add(eta, w);
    TraceRecord rec = make_record(fsum, atoms, k, w, avg.value(w), options.f_star);
    rec.eta = eta;
    rec.eps = eps;
    rec.batch = static_cast<double>(b);
    if (options.record_iterates) trace.iterates.push_back(w);
    trace.records.push_back(rec);
    w = (1.0 - eta) * w + eta * d.d;
  }
  trace.final_w = w;
  trace.final_avg = avg.value(w);
  return trace;
}

Point expected_lmo_direction(const FiniteSumObjective& fsum, const AtomSet& atoms, const Point& w) {
  Point mean = Point::Zero(static_cast<Eigen::Index>(atoms.dim()));
  for (std::size_t i = 0; i < fsum.size(); ++i) mean += lmo(atoms, fsum.component(i).gradient(w)).d;
  return mean / static_cast<double>(fsum.size());
}

double expected_lmo_violation(const FiniteSumObjective& fsum, const AtomSet& atoms, const Point& w) {
  const Point g = fsum.gradient(w);
  return expected_lmo_direction(fsum, atoms, w).dot(g) - lmo(atoms, g).value;
}

// ---------------------------------------------------------------------------

double arsfw_R2(const AtomSet& atoms, const Point& w1) {
  if (atoms.is_ball()) {
    const double d = 2.0 * atoms.as_ball().radius;
    return 0.5 * d * d;
  }
  double best = 0.0;
  for (const auto& a : atoms.atoms()) best = std::max(best, 0.5 * (a - w1).squaredNorm());
  return best;
}

StochasticSchedules arsfw_schedules(const ArsfwParams& params, double R2, double rho, const ArsfwOptions& options) {
  if (options.sigma_mode == SigmaMode::Fixed) {
    const long t = options.sigma_horizon > 0 ? options.sigma_horizon : options.T;
    return presets::arsfw_fixed_sigma(t, params.p, params.c, params.lambda, R2, rho);
  }
  return presets::arsfw(params.p, params.c, params.lambda, R2, rho);
}

Point arsfw_proxy_minimizer(const ArsfwRun& run, const Point& g_bar) {
  if (!run.ball_domain) throw Error(ErrorCode::UnsupportedDomain, "closed-form proxy minimizer needs a ball domain");
  const Point u = run.w1 - g_bar / run.rho;
  const Point v = u - run.ball.center;
  const double n = v.norm();
  return n <= run.ball.radius ? u : Point(run.ball.center + (run.ball.radius / n) * v);
}

namespace {

double proxy_value(const ArsfwRun& run, const Point& g_bar, const Point& w) {
  return g_bar.dot(w) + 0.5 * run.rho * (w - run.w1).squaredNorm();
}

}  // namespace

ArsfwRun arsfw_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const ArsfwParams& params,
                   const ArsfwOptions& options) {
  check_run(fsum, atoms, options.T);
  if (!(params.lambda >= 1.0)) throw Error(ErrorCode::InvalidParams, "lambda must be >= 1");
  if (!(params.c >= 0.0)) throw Error(ErrorCode::InvalidParams, "c must be >= 0");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw Error(ErrorCode::InvalidSchedule, "p must lie in [0, 1]");

  ArsfwRun run;
  run.params = params;
  run.rho = 1.0;
  run.w1 = options.w1.value_or(atoms.default_start());
  require_point(run.w1, "w1");
  run.R2 = arsfw_R2(atoms, run.w1);
  run.ball_domain = atoms.is_ball();
  if (run.ball_domain) run.ball = atoms.as_ball();
  const StochasticSchedules sched = arsfw_schedules(params, run.R2, run.rho, options);

  StochasticOptions meta_opts;
  meta_opts.seed = options.seed;
  meta_opts.problem_id = options.problem_id;
  run.trace.meta = stochastic_meta("arsfw", sched, meta_opts);

  Rng index_rng(options.seed, 0);
  Rng oracle_rng(options.seed, 1);
  Point w = run.w1;
  Point g_bar = Point::Zero(static_cast<Eigen::Index>(atoms.dim()));
  RunningAverage avg(atoms.dim());
  const auto T = static_cast<std::size_t>(options.T);
  run.etas.reserve(T);
  run.sigmas.reserve(T);
  run.iterates.reserve(T + 1);
  run.gradients.reserve(T);
  run.g_bars.reserve(T + 1);

  auto record_proxy = [&] {
    if (run.ball_domain) {
      run.proxy_errors.push_back(proxy_value(run, g_bar, w) - proxy_value(run, g_bar, arsfw_proxy_minimizer(run, g_bar)));
    }
  };

  for (long k = 1; k <= options.T; ++k) {
    const double eta = checked_eta(sched.eta, k, false);
    const double eps = sched.eps(k);
    const double sigma = sched.sigma(k);
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidSchedule, "sigma must be >= 0");

    run.iterates.push_back(w);
    run.g_bars.push_back(g_bar);
    record_proxy();

    avg.add(sigma, w);
    TraceRecord rec = make_record(fsum, atoms, k, w, avg.value(w), options.f_star);
    rec.eta = eta;
    rec.eps = eps;
    rec.batch = 1.0;
    rec.sigma = sigma;
    run.trace.records.push_back(rec);

    const Point direction = g_bar + run.rho * (w - run.w1);
    const LmoResult d = approx_lmo(atoms, direction, eps, options.mode, &oracle_rng);
    const std::size_t i = index_rng.uniform_index(fsum.size());
    Point g = fsum.component(i).gradient(w);
    w = (1.0 - eta) * w + eta * d.d;
    g_bar += sigma * g;

    run.etas.push_back(eta);
    run.sigmas.push_back(sigma);
    run.gradients.push_back(std::move(g));
  }
  run.iterates.push_back(w);
  run.g_bars.push_back(g_bar);
  record_proxy();
  run.trace.final_w = w;
  run.trace.final_avg = avg.value(w);
  return run;
}

LazyBoundReport lazy_bound_report(const ArsfwRun& run, const Point& w_ref, long t_max) {
  if (!run.ball_domain) throw Error(ErrorCode::UnsupportedDomain, "lazy-update bound needs a ball domain");
  const long T = static_cast<long>(run.gradients.size());
  const long t_end = t_max < 0 ? T : std::min(t_max, T);
  LazyBoundReport r;
  r.rhs = run.R2;
  double lhs = 0.0, rhs = run.R2, worst_margin = rhs;
  Point g_bar = Point::Zero(w_ref.size());
  for (long k = 0; k < t_end; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Point w_star = arsfw_proxy_minimizer(run, g_bar);
    const double s = run.sigmas[ku];
    const Point& g = run.gradients[ku];
    lhs += s * g.dot(w_star - w_ref);
    rhs += 2.0 * s * s * g.squaredNorm() / run.rho;
    g_bar += s * g;
    if (rhs - lhs < worst_margin) {
      worst_margin = rhs - lhs;
      r.worst_t = k + 1;
      r.lhs = lhs;
      r.rhs = rhs;
    }
    if (lhs > rhs + 1e-9) r.holds = false;
  }
  return r;
}

bool verify_lazy_bound(const ArsfwRun& run, const Point& w_ref) { return lazy_bound_report(run, w_ref).holds; }

KBoundReport k_bound_report(const ArsfwRun& run, double lipschitz) {
  if (!run.ball_domain) throw Error(ErrorCode::UnsupportedDomain, "K-bound check needs a ball domain");
  KBoundReport r;
  r.K = recurrence::compute_K(run.rho, run.params.p, run.params.lambda, run.R2, run.params.c, lipschitz);
  for (std::size_t i = 0; i < run.proxy_errors.size(); ++i) {
    const double eta = std::pow(static_cast<double>(i + 1), -run.params.p);
    const double bound = r.K * eta;
    const double ratio = run.proxy_errors[i] / bound;
    if (ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_k = static_cast<long>(i + 1);
    }
    if (run.proxy_errors[i] > bound + 1e-9) r.holds = false;
  }
  return r;
}

bool verify_k_bound(const ArsfwRun& run, double lipschitz) { return k_bound_report(run, lipschitz).holds; }

}  // namespace greedyopt
