#include "greedyopt/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>

#include "greedyopt/errors.hpp"
#include "greedyopt/greedy.hpp"
#include "greedyopt/problems.hpp"
#include "greedyopt/recurrence.hpp"
#include "greedyopt/stochastic.hpp"

namespace greedyopt::checks {

bool CheckResult::pass() const {
  return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::string format_line(const std::string& check, const CheckLine& line) {
  return std::string(line.pass ? "PASS " : "FAIL ") + check + " " + line.label + ": " + line.detail;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Parameter lookup with defaults; anything not in the defaults is rejected.
class Params {
 public:
  Params(const std::string& check, CheckParams defaults, const CheckParams& overrides)
      : check_(check), values_(std::move(defaults)) {
    for (const auto& [k, v] : overrides) {
      auto it = values_.find(k);
      if (it == values_.end()) throw Error(ErrorCode::InvalidParams, "verify " + check + ": unknown parameter --" + k);
      it->second = v;
    }
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  double real(const std::string& key) const {
    const std::string& s = str(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidParams, "verify " + check_ + ": --" + key + " expects a number, got '" + s + "'");
  }

  long integer(const std::string& key, long min = 1) const {
    const std::string& s = str(key);
    try {
      std::size_t pos = 0;
      const long v = std::stol(s, &pos);
      if (pos == s.size() && v >= min) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidParams,
                "verify " + check_ + ": --" + key + " expects an integer >= " + std::to_string(min) + ", got '" + s + "'");
  }

  std::uint64_t seed(const std::string& key) const {
    const std::string& s = str(key);
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(s, &pos);
      if (pos == s.size() && s.find('-') == std::string::npos) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidParams, "verify " + check_ + ": --" + key + " expects a seed, got '" + s + "'");
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    const std::string& s = str(key);
    std::size_t start = 0;
    while (start <= s.size()) {
      const std::size_t comma = std::min(s.find(',', start), s.size());
      const std::string item = s.substr(start, comma - start);
      try {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
        out.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidParams, "verify " + check_ + ": --" + key + " expects a comma-separated list of numbers");
      }
      start = comma + 1;
    }
    return out;
  }

 private:
  std::string check_;
  CheckParams values_;
};

void report(const ProgressSink& progress, const std::string& text) {
  if (progress) progress(text);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

const std::map<std::string, CheckParams>& defaults_table() {
  static const std::map<std::string, CheckParams> table = {
      {"rate", {{"problem", "asj-triangle"}, {"T", "2000"}, {"c", "1"}}},
      {"optimal", {{"pairs", "100"}, {"T", "100000"}, {"seed", "1"}}},
      {"equiv", {{"problems", "100"}, {"T", "200"}, {"c", "1"}, {"seed", "1"}}},
      {"asj",
       {{"seeds", "2000"}, {"k", "100"}, {"rate-seeds", "50"}, {"horizons", "100,400,1600"}, {"c", "0"}, {"seed", "0"}}},
      {"asfw-a", {{"seeds", "500"}, {"T", "10000"}, {"probes", "100"}, {"seed", "0"}}},
      {"asfw-b", {{"seeds", "200"}, {"T", "10000"}, {"r", "0.5"}, {"seed", "0"}}},
      {"arsfw",
       {{"seeds", "20"}, {"T", "10000"}, {"p", "0.5"}, {"lambda", "1"}, {"c", "1"}, {"horizons", "100,1000,10000"},
        {"seed", "0"}}},
      {"converge", {{"T", "100000"}, {"q", "0.5,0.9"}, {"eps-power", "0.25"}}},
  };
  return table;
}

// ---------------------------------------------------------------------------

CheckResult check_rate(const Params& prm, const ProgressSink& progress) {
  const ProblemInstance inst = make_problem(prm.str("problem"));
  if (!inst.f_star) throw Error(ErrorCode::InvalidParams, "verify rate: problem has no known optimum");
  const long T = prm.integer("T");
  const double c = prm.real("c");
  if (c < 0.0) throw Error(ErrorCode::InvalidParams, "verify rate: c must be >= 0");
  const double M = inst.constants.curvature;

  struct Variant {
    std::string label;
    Algorithm algorithm;
    OracleMode mode;
    double c;
  };
  const std::vector<Variant> variants = {
      {"exact-jones", Algorithm::jones(), OracleMode::Exact, 0.0},
      {"exact-fw", Algorithm::frank_wolfe(), OracleMode::Exact, 0.0},
      {"adversarial-jones", Algorithm::jones(), OracleMode::Adversarial, c},
      {"adversarial-fw", Algorithm::frank_wolfe(), OracleMode::Adversarial, c},
  };

  CheckResult result;
  double worst_recurrence = -std::numeric_limits<double>::infinity();
  std::string worst_where;
  for (const auto& v : variants) {
    report(progress, "rate: " + v.label);
    Schedules s{rules::standard_eta(), v.c == 0.0 ? rules::zero() : rules::scaled(v.c, rules::standard_eta())};
    DeterministicOptions opts;
    opts.T = T;
    opts.mode = v.mode;
    opts.f_star = inst.f_star;
    opts.problem_id = inst.name;
    const Trace tr = run_deterministic(*inst.fsum, inst.atoms, inst.start, s, v.algorithm, opts);

    const double coeff = 2.0 * M + 4.0 * v.c;
    double worst = -std::numeric_limits<double>::infinity(), worst_scaled = 0.0;
    long worst_k = 0;
    for (long k = 1; k <= T; ++k) {
      const double err = *tr.records[static_cast<std::size_t>(k)].err;
      const double excess = err - coeff / static_cast<double>(k + 2);
      if (excess > worst) {
        worst = excess;
        worst_k = k;
      }
      worst_scaled = std::max(worst_scaled, err * static_cast<double>(k + 2));
    }
    result.lines.push_back({v.label, worst <= 1e-9,
                            "max err(k)(k+2) = " + num(worst_scaled) + " vs 2M+4c = " + num(coeff) +
                                " (M = " + num(M) + ", worst excess " + num(worst) + " at k = " + std::to_string(worst_k) + ")"});

    for (long k = 0; k < T; ++k) {
      const auto& r = tr.records[static_cast<std::size_t>(k)];
      const double eta = *r.eta;
      const double rhs = (1.0 - eta) * *r.err + eta * r.eps + 0.5 * M * eta * eta;
      const double excess = *tr.records[static_cast<std::size_t>(k + 1)].err - rhs;
      if (excess > worst_recurrence) {
        worst_recurrence = excess;
        worst_where = v.label + " k = " + std::to_string(k);
      }
    }
  }
  result.lines.push_back({"recurrence", worst_recurrence <= 1e-9,
                          "max err(k+1) - [(1-eta)err(k) + eta eps + (M/2)eta^2] = " + num(worst_recurrence) + " (" +
                              worst_where + ") vs 1e-09"});
  return result;
}

CheckResult check_optimal(const Params& prm, const ProgressSink& progress) {
  const long pairs = prm.integer("pairs");
  const long T = prm.integer("T");
  Rng rng(prm.seed("seed"), 0);
  double worst_lower = std::numeric_limits<double>::infinity();
  double worst_upper = 0.0;
  bool lower_ok = true, upper_ok = true;
  for (long i = 0; i < pairs; ++i) {
    const double C = std::exp(std::log(0.01) + rng.uniform01() * (std::log(100.0) - std::log(0.01)));
    const double e0 = 2.0 * C * rng.uniform_open01();
    const auto rep = recurrence::lower_bound_report(e0, C, T);
    lower_ok = lower_ok && rep.holds;
    worst_lower = std::min(worst_lower, rep.min_scaled / rep.a);

    const auto e = recurrence::simulate(e0, C, rules::standard_eta().at, T);
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double ratio = e[k] * static_cast<double>(k + 2) / (4.0 * C);
      worst_upper = std::max(worst_upper, ratio);
      if (ratio > 1.0 + 1e-12) upper_ok = false;
    }
    if ((i + 1) % 25 == 0) report(progress, "optimal: " + std::to_string(i + 1) + " pairs");
  }
  CheckResult result;
  result.lines.push_back({"lower-bound", lower_ok,
                          "min over pairs of min_k e_k(k+2)/min(e0,C) = " + num(worst_lower) + " vs 1 - 1e-12"});
  result.lines.push_back({"tightness", upper_ok,
                          "max over pairs of max_k e_k(k+2)/4C with eta = 2/(k+2) = " + num(worst_upper) + " vs 1"});
  return result;
}

CheckResult check_equiv(const Params& prm, const ProgressSink& progress) {
  const long problems = prm.integer("problems");
  const long T = prm.integer("T");
  const double c = prm.real("c");
  if (c < 0.0) throw Error(ErrorCode::InvalidParams, "verify equiv: c must be >= 0");
  Rng rng(prm.seed("seed"), 0);

  double worst_jones = -std::numeric_limits<double>::infinity();
  double worst_fw = -std::numeric_limits<double>::infinity();
  for (long p = 0; p < problems; ++p) {
    const std::size_t n = 1 + rng.uniform_index(5);
    const std::size_t dim = 1 + rng.uniform_index(4);
    const std::size_t m = 2 + rng.uniform_index(5);
    std::vector<Point> xs, atoms;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n; ++i) {
      Point x(static_cast<Eigen::Index>(dim));
      for (auto& v : x) v = rng.normal();
      xs.push_back(x);
      ys.push_back(rng.normal());
    }
    for (std::size_t i = 0; i < m; ++i) {
      Point a(static_cast<Eigen::Index>(dim));
      for (auto& v : a) v = rng.normal();
      atoms.push_back(a);
    }
    const ProblemInstance inst = make_least_squares("random", xs, ys, AtomSet::finite(atoms));
    const double M = inst.constants.curvature;
    const Objective& f = *inst.fsum;
    Rng oracle(prm.seed("seed") + static_cast<std::uint64_t>(p), 1);

    for (OracleMode mode : {OracleMode::Exact, OracleMode::Adversarial}) {
      const double cm = mode == OracleMode::Exact ? 0.0 : c;
      Point wj = inst.start, wf = inst.start;
      for (long k = 0; k < T; ++k) {
        const double eta = 2.0 / static_cast<double>(k + 2);
        const double eps = cm * eta;
        const double bound = eps + 0.5 * M * eta;

        const StepResult sj = jones_step(f, inst.atoms, wj, eta, eps, mode, &oracle);
        worst_jones = std::max(worst_jones, fw_slack_of_jones(f, inst.atoms, wj, sj.d) - bound);
        wj = sj.w_next;

        const StepResult sf = fw_step(f, inst.atoms, wf, eta, eps, mode, &oracle);
        worst_fw = std::max(worst_fw, jones_slack_of_fw(f, inst.atoms, wf, sf.d, eta) - bound);
        wf = sf.w_next;
      }
    }
    if ((p + 1) % 25 == 0) report(progress, "equiv: " + std::to_string(p + 1) + " problems");
  }
  CheckResult result;
  result.lines.push_back({"jones-as-fw", worst_jones <= 1e-9,
                          "max FW slack of Jones steps - (eps + (M/2)eta) = " + num(worst_jones) + " vs 1e-09"});
  result.lines.push_back({"fw-as-jones", worst_fw <= 1e-9,
                          "max normalized Jones slack of FW steps - (eps + (M/2)eta) = " + num(worst_fw) + " vs 1e-09"});
  return result;
}

CheckResult check_asj(const Params& prm, const ProgressSink& progress) {
  CheckResult result;
  const std::uint64_t base = prm.seed("seed");

  // Single-sample joint steps on the symmetric triangle.
  {
    const ProblemInstance inst = make_problem("asj-triangle");
    const long seeds = prm.integer("seeds");
    const long K = prm.integer("k");
    const auto& atoms = inst.atoms.atoms();
    auto is_vertex = [&](const Point& w) { return std::any_of(atoms.begin(), atoms.end(), [&](const Point& a) { return a == w; }); };
    long off_vertex = 0;
    std::vector<double> errs;
    for (long s = 0; s < seeds; ++s) {
      StochasticOptions opts;
      opts.T = K;
      opts.seed = base + static_cast<std::uint64_t>(s);
      opts.f_star = inst.f_star;
      opts.record_iterates = true;
      const Trace tr = asj_run(*inst.fsum, inst.atoms, presets::single_sample_standard(0.0), AsjInner::ExactJoint, opts);
      for (std::size_t i = 1; i < tr.iterates.size(); ++i) off_vertex += is_vertex(tr.iterates[i]) ? 0 : 1;
      off_vertex += is_vertex(tr.final_w) ? 0 : 1;
      errs.push_back(*tr.back().err);
    }
    report(progress, "asj: divergence runs done");
    const double m = mean(errs);
    result.lines.push_back({"divergence-vertices", off_vertex == 0,
                            std::to_string(off_vertex) + " post-step iterates off the vertices over " +
                                std::to_string(seeds) + " seeds"});
    result.lines.push_back({"divergence-mean-err", m >= 0.45 && m <= 0.55,
                            "mean err at k = " + std::to_string(K) + " = " + num(m) + " vs [0.45, 0.55]"});
  }

  // Fixed-horizon rate from a far vertex towards a vertex optimum.
  {
    const ProblemInstance inst = make_problem("triangle(y1=1,y2=-1,y3=-1)");
    const double c = prm.real("c");
    if (c < 0.0) throw Error(ErrorCode::InvalidParams, "verify asj: c must be >= 0");
    const long seeds = prm.integer("rate-seeds");
    const Point w1 = inst.atoms.atoms()[1];
    const double f_star = *inst.f_star;
    const double D = inst.constants.diameter, L = inst.constants.lipschitz, M = inst.constants.component_curvature;
    const double numerator = inst.fsum->value(w1) - f_star + D * L + M + c;
    std::vector<double> ts, means;
    bool bound_ok = true;
    std::string detail;
    for (double td : prm.list("horizons")) {
      const long t = std::lround(td);
      if (t < 1) throw Error(ErrorCode::InvalidParams, "verify asj: horizons must be >= 1");
      std::vector<double> errs;
      for (long s = 0; s < seeds; ++s) {
        StochasticOptions opts;
        opts.T = t;
        opts.seed = base + static_cast<std::uint64_t>(s);
        opts.f_star = f_star;
        opts.start = w1;
        const Trace tr = asj_run(*inst.fsum, inst.atoms, presets::asj_fixed_horizon(t, c), AsjInner::FixedEta, opts);
        errs.push_back(*tr.back().f_avg - f_star);
      }
      const double m = mean(errs);
      const double bound = numerator / std::sqrt(static_cast<double>(t));
      bound_ok = bound_ok && m <= bound;
      detail += (detail.empty() ? "" : ", ") + std::string("t = ") + std::to_string(t) + ": " + num(m) + " <= " + num(bound);
      ts.push_back(static_cast<double>(t));
      means.push_back(m);
      report(progress, "asj: horizon " + std::to_string(t) + " done");
    }
    result.lines.push_back({"rate-bound", bound_ok, "mean err(w_avg) vs bound; " + detail});
    if (ts.size() >= 2 && std::all_of(means.begin(), means.end(), [](double m) { return m > 0.0; })) {
      const double slope = loglog_slope(ts, means);
      result.lines.push_back({"rate-slope", slope >= -0.8 && slope <= -0.3, "log-log slope = " + num(slope) + " vs [-0.8, -0.3]"});
    } else {
      result.lines.push_back({"rate-slope", false, "needs two horizons with positive mean error"});
    }
  }
  return result;
}

CheckResult check_asfw_a(const Params& prm, const ProgressSink& progress) {
  const ProblemInstance inst = make_problem("asfw-two-point");
  const long seeds = prm.integer("seeds");
  const long T = prm.integer("T");
  const std::uint64_t base = prm.seed("seed");
  CheckResult result;

  std::vector<double> errs;
  for (long s = 0; s < seeds; ++s) {
    StochasticOptions opts;
    opts.T = T;
    opts.seed = base + static_cast<std::uint64_t>(s);
    opts.f_star = inst.f_star;
    errs.push_back(*asfw_run(*inst.fsum, inst.atoms, presets::single_sample_standard(0.0), opts).back().err);
    if ((s + 1) % 100 == 0) report(progress, "asfw-a: " + std::to_string(s + 1) + " seeds");
  }
  const double m = mean(errs);
  result.lines.push_back({"convergence", m <= 0.01, "mean err at k = " + std::to_string(T) + " = " + num(m) + " vs 0.01"});

  const Point x = inst.xs[0];
  const Point w = 0.5 * x;
  const double violation = expected_lmo_violation(*inst.fsum, inst.atoms, w);
  const double expected = 2.0 * std::numbers::sqrt2;
  result.lines.push_back({"violation-at-x/2", std::abs(violation - expected) <= 1e-12,
                          "violation = " + num(violation) + " vs 2 sqrt(2) = " + num(expected) + " within 1e-12"});
  const double eta = 2.0 / static_cast<double>(T + 2);
  result.lines.push_back({"violation-ratio", violation / eta > 1e3,
                          "violation / eta_k at k = " + std::to_string(T) + " = " + num(violation / eta) + " vs 1000"});

  Rng rng(base, 3);
  const long probes = prm.integer("probes");
  long nonzero = 0, outside = 0;
  for (long i = 0; i < probes; ++i) {
    const Point p = sample_feasible(inst.atoms, rng);
    if (std::abs(x.dot(p)) >= 1.0) {
      ++outside;
      continue;
    }
    if (expected_lmo_direction(*inst.fsum, inst.atoms, p).cwiseAbs().maxCoeff() != 0.0) ++nonzero;
  }
  result.lines.push_back({"cancellation", nonzero == 0 && outside == 0,
                          std::to_string(nonzero) + " of " + std::to_string(probes) + " feasible points with E[d] != 0"});
  return result;
}

CheckResult check_asfw_b(const Params& prm, const ProgressSink& progress) {
  const double r = prm.real("r");
  const ProblemInstance inst = make_problem("asfw-triangle-biased(r=" + prm.str("r") + ")");
  const long seeds = prm.integer("seeds");
  const long T = prm.integer("T");
  const std::uint64_t base = prm.seed("seed");
  const Point target = make_point({0.0, 2.0 * r / 3.0});

  long near = 0;
  std::vector<double> errs;
  for (long s = 0; s < seeds; ++s) {
    StochasticOptions opts;
    opts.T = T;
    opts.seed = base + static_cast<std::uint64_t>(s);
    opts.f_star = inst.f_star;
    opts.record_iterates = true;
    const Trace tr = asfw_run(*inst.fsum, inst.atoms, presets::single_sample_standard(0.0), opts);
    if ((tr.iterates.back() - target).norm() <= 0.05) ++near;
    errs.push_back(*tr.back().err);
    if ((s + 1) % 50 == 0) report(progress, "asfw-b: " + std::to_string(s + 1) + " seeds");
  }
  const double frac = static_cast<double>(near) / static_cast<double>(seeds);
  const double m = mean(errs);
  const double analytic = inst.fsum->value(target) - *inst.f_star;
  CheckResult result;
  result.lines.push_back({"limit", frac >= 0.9,
                          "fraction of seeds with |w_k - (0, 2r/3)| <= 0.05 at k = " + std::to_string(T) + " = " +
                              num(frac) + " vs 0.9"});
  result.lines.push_back({"mean-err", m >= 0.1, "mean err = " + num(m) + " vs 0.1"});
  result.lines.push_back({"analytic-gap", m >= analytic - 0.02,
                          "mean err = " + num(m) + " vs f(limit) - f* - 0.02 = " + num(analytic - 0.02)});
  return result;
}

CheckResult check_arsfw(const Params& prm, const ProgressSink& progress) {
  const ProblemInstance inst = make_problem("asfw-two-point");
  const ArsfwParams params{prm.real("p"), prm.real("c"), prm.real("lambda")};
  if (!(params.c > 0.0)) throw Error(ErrorCode::InvalidParams, "verify arsfw: c must be > 0");
  const long seeds = prm.integer("seeds");
  const long T = prm.integer("T");
  const std::uint64_t base = prm.seed("seed");
  const double L = inst.constants.lipschitz;
  const double f_star = *inst.f_star;
  const double r = inst.atoms.as_ball().radius;
  const std::vector<Point> refs = {*inst.w_star, make_point({r, 0.0}), make_point({-r, 0.0}), make_point({0.0, r}),
                                   make_point({0.0, -r})};
  std::vector<long> horizons;
  for (double h : prm.list("horizons")) {
    const long t = std::lround(h);
    if (t < 1 || t > T) throw Error(ErrorCode::InvalidParams, "verify arsfw: horizons must lie in [1, T]");
    horizons.push_back(t);
  }

  bool k_ok = true, lazy_ok = true;
  double worst_k_ratio = 0.0, K = 0.0, R2 = 0.0, rho = 1.0;
  double worst_lazy_margin = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> varying(horizons.size()), fixed(horizons.size());
  for (long s = 0; s < seeds; ++s) {
    ArsfwOptions opts;
    opts.T = T;
    opts.seed = base + static_cast<std::uint64_t>(s);
    opts.f_star = f_star;
    opts.problem_id = inst.name;
    const ArsfwRun run = arsfw_run(*inst.fsum, inst.atoms, params, opts);
    R2 = run.R2;
    rho = run.rho;
    const KBoundReport kb = k_bound_report(run, L);
    K = kb.K;
    k_ok = k_ok && kb.holds;
    worst_k_ratio = std::max(worst_k_ratio, kb.worst_ratio);
    for (const Point& ref : refs) {
      const LazyBoundReport lz = lazy_bound_report(run, ref);
      lazy_ok = lazy_ok && lz.holds;
      worst_lazy_margin = std::min(worst_lazy_margin, lz.rhs - lz.lhs);
    }
    for (std::size_t i = 0; i < horizons.size(); ++i) {
      varying[i].push_back(*run.trace.records[static_cast<std::size_t>(horizons[i] - 1)].f_avg - f_star);

      ArsfwOptions fo = opts;
      fo.T = horizons[i];
      fo.sigma_mode = SigmaMode::Fixed;
      fo.sigma_horizon = horizons[i];
      fixed[i].push_back(*arsfw_run(*inst.fsum, inst.atoms, params, fo).trace.back().f_avg - f_star);
    }
    if ((s + 1) % 5 == 0) report(progress, "arsfw: " + std::to_string(s + 1) + " seeds");
  }

  CheckResult result;
  result.lines.push_back({"k-bound", k_ok, "max_k e_k/(K eta_k) = " + num(worst_k_ratio) + " with K = " + num(K)});
  result.lines.push_back({"lazy-bound", lazy_ok,
                          "min over seeds, references and prefixes of rhs - lhs = " + num(worst_lazy_margin) + " vs -1e-09"});

  const double c = params.c;
  const double lead = 3.0 * L * std::sqrt(2.0 * K / rho) + 2.0 * c * L * L / rho;
  bool var_ok = true, fix_ok = true;
  std::string var_detail, fix_detail;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    const double t = static_cast<double>(horizons[i]);
    double bound = 0.0;
    if (params.p == 0.5) {
      bound = lead * (std::log(t) + 1.0) / std::pow(t, 0.25) + R2 / (c * std::pow(t, 0.25));
    } else {
      double ss = 0.0, sse = 0.0;
      for (long k = 1; k <= horizons[i]; ++k) {
        const double eta = std::pow(static_cast<double>(k), -params.p);
        const double sigma = c * std::pow(eta, 1.5);
        ss += sigma;
        sse += sigma * std::sqrt(eta);
      }
      bound = lead * sse / ss + R2 / ss;
    }
    const double m = mean(varying[i]);
    var_ok = var_ok && m <= bound;
    var_detail += (var_detail.empty() ? "" : ", ") + std::string("t = ") + std::to_string(horizons[i]) + ": " + num(m) +
                  " <= " + num(bound);

    const double bound3 = (4.0 * L * std::sqrt(2.0 * K / rho) + 8.0 * c * L * L / (3.0 * rho) + R2 / c) / std::pow(t, 0.25);
    const double mf = mean(fixed[i]);
    fix_ok = fix_ok && mf <= bound3;
    fix_detail += (fix_detail.empty() ? "" : ", ") + std::string("t = ") + std::to_string(horizons[i]) + ": " + num(mf) +
                  " <= " + num(bound3);
  }
  result.lines.push_back({"rate-varying-sigma", var_ok, "mean err(w_avg) vs bound; " + var_detail});
  result.lines.push_back({"rate-fixed-sigma", fix_ok, "mean err(w_avg) vs bound; " + fix_detail});
  return result;
}

CheckResult check_converge(const Params& prm, const ProgressSink& progress) {
  const ProblemInstance inst = make_problem("asj-triangle");
  const long T = prm.integer("T");
  const double eps_power = prm.real("eps-power");
  const double M = inst.constants.curvature;
  CheckResult result;
  for (double q : prm.list("q")) {
    if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidParams, "verify converge: q must lie in (0, 1]");
    Schedules s{rules::power(q, 0), rules::power(eps_power, 0)};
    DeterministicOptions opts;
    opts.T = T;
    opts.mode = OracleMode::Adversarial;
    opts.f_star = inst.f_star;
    opts.problem_id = inst.name;
    const Trace tr = run_deterministic(*inst.fsum, inst.atoms, inst.start, s, Algorithm::frank_wolfe(), opts);
    const double err = *tr.back().err;
    result.lines.push_back({"fw-q=" + num(q), err <= 1e-2,
                            "err at k = " + std::to_string(T) + " = " + num(err) + " vs 0.01"});

    const auto e = recurrence::simulate_approx(*tr.records.front().err, M, s.eta.at, s.eps.at, T);
    result.lines.push_back({"recurrence-q=" + num(q), e.back() <= 1e-3,
                            "worst-case recurrence e at k = " + std::to_string(T) + " = " + num(e.back()) + " vs 0.001"});
    report(progress, "converge: q = " + num(q) + " done");
  }
  return result;
}

}  // namespace

std::vector<std::string> check_names() {
  return {"rate", "optimal", "equiv", "asj", "asfw-a", "asfw-b", "arsfw", "converge"};
}

CheckParams check_defaults(const std::string& name) {
  const auto& table = defaults_table();
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::InvalidInput, "unknown verify subcommand '" + name + "'");
  return it->second;
}

CheckResult run_check(const std::string& name, const CheckParams& params, const ProgressSink& progress) {
  const Params prm(name, check_defaults(name), params);
  CheckResult result;
  if (name == "rate") result = check_rate(prm, progress);
  else if (name == "optimal") result = check_optimal(prm, progress);
  else if (name == "equiv") result = check_equiv(prm, progress);
  else if (name == "asj") result = check_asj(prm, progress);
  else if (name == "asfw-a") result = check_asfw_a(prm, progress);
  else if (name == "asfw-b") result = check_asfw_b(prm, progress);
  else if (name == "arsfw") result = check_arsfw(prm, progress);
  else result = check_converge(prm, progress);
  result.name = name;
  return result;
}

}  // namespace greedyopt::checks
