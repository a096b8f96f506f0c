#include "greedyopt/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace greedyopt {

namespace {

void check_step_args(const AtomSet& atoms, const Point& w, double eta, double eps) {
  require_point(w, "iterate");
  if (static_cast<std::size_t>(w.size()) != atoms.dim()) throw Error(ErrorCode::InvalidInput, "iterate dimension mismatch");
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidInput, "step size must lie in [0, 1]");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidInput, "oracle error must be >= 0");
}

void require_finite_atoms(const AtomSet& atoms, const char* op) {
  if (atoms.is_ball()) {
    throw Error(ErrorCode::UnsupportedDomain,
                std::string(op) + ": the Jones inner problem is only solved over finite atom sets");
  }
}

Point segment(const Point& w, const Point& d, double eta) { return (1.0 - eta) * w + eta * d; }

// Index selection among candidate values shared by both Jones variants:
// exact -> lowest value (lowest index on ties); adversarial -> highest value
// within `slack` of the minimum (highest index on ties); seeded-random ->
// uniform over that admissible set.
std::size_t select_candidate(const std::vector<double>& values, double slack, OracleMode mode, Rng* rng) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  if (mode == OracleMode::Exact || slack == 0.0) return best;
  std::vector<std::size_t> admissible;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] - values[best] <= slack) admissible.push_back(i);
  }
  if (mode == OracleMode::Adversarial) {
    std::size_t pick = best;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i : admissible) {
      if (values[i] >= worst) {
        worst = values[i];
        pick = i;
      }
    }
    return pick;
  }
  if (rng == nullptr) throw Error(ErrorCode::InvalidInput, "seeded-random oracle needs an rng");
  return admissible[rng->uniform_index(admissible.size())];
}

}  // namespace

double line_minimize(const Objective& f, const Point& w, const Point& d) {
  if ((d - w).norm() == 0.0) return 0.0;
  auto phi = [&](double eta) { return f.value(segment(w, d, eta)); };

  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double lo = 0.0, hi = 1.0;
  double a = hi - kInvPhi * (hi - lo), b = lo + kInvPhi * (hi - lo);
  double fa = phi(a), fb = phi(b);
  while (hi - lo > 1e-10) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = phi(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = phi(b);
    }
  }
  const double interior = 0.5 * (lo + hi);
  const double f_mid = phi(interior);
  const double f_zero = phi(0.0);
  const double f_one = phi(1.0);
  // Endpoints are preferred when they match the interior value to rounding,
  // so that steps landing on an atom land on it exactly.
  const double tol = 1e-14 * std::max(1.0, std::abs(f_mid));
  const double best_end = std::min(f_zero, f_one);
  if (best_end <= f_mid + tol) return f_one < f_zero ? 1.0 : 0.0;
  return interior;
}

StepResult jones_step(const Objective& f, const AtomSet& atoms, const Point& w, double eta, double eps, OracleMode mode,
                      Rng* rng) {
  require_finite_atoms(atoms, "jones_step");
  check_step_args(atoms, w, eta, eps);
  const auto& a = atoms.atoms();
  std::vector<double> values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) values[i] = f.value(segment(w, a[i], eta));
  const std::size_t pick = select_candidate(values, eps * eta, mode, rng);
  return {segment(w, a[pick], eta), a[pick], eta, pick};
}

StepResult jones_step_joint(const Objective& f, const AtomSet& atoms, const Point& w, double abs_eps, OracleMode mode,
                            Rng* rng) {
  require_finite_atoms(atoms, "jones_step_joint");
  check_step_args(atoms, w, 0.0, abs_eps);
  const auto& a = atoms.atoms();
  std::vector<double> etas(a.size()), values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    etas[i] = line_minimize(f, w, a[i]);
    values[i] = f.value(segment(w, a[i], etas[i]));
  }
  const std::size_t pick = select_candidate(values, abs_eps, mode, rng);
  return {segment(w, a[pick], etas[pick]), a[pick], etas[pick], pick};
}

StepResult fw_step(const Objective& f, const AtomSet& atoms, const Point& w, double eta, double eps, OracleMode mode,
                   Rng* rng) {
  check_step_args(atoms, w, eta, eps);
  LmoResult r = approx_lmo(atoms, f.gradient(w), eps, mode, rng);
  Point next = segment(w, r.d, eta);
  return {std::move(next), std::move(r.d), eta, r.index};
}

double fw_slack_of_jones(const Objective& f, const AtomSet& atoms, const Point& w, const Point& d_chosen) {
  const Point g = f.gradient(w);
  require_same_dim(g, d_chosen, "fw_slack_of_jones");
  return g.dot(d_chosen) - lmo(atoms, g).value;
}

double jones_slack_of_fw(const Objective& f, const AtomSet& atoms, const Point& w, const Point& d_chosen, double eta) {
  require_finite_atoms(atoms, "jones_slack_of_fw");
  check_step_args(atoms, w, eta, 0.0);
  if (eta == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms.atoms()) best = std::min(best, f.value(segment(w, a, eta)));
  return (f.value(segment(w, d_chosen, eta)) - best) / eta;
}

Algorithm Algorithm::jones() {
  return {"jones", [](long) { return StepKind::Jones; }};
}

Algorithm Algorithm::jones_joint() {
  return {"jones-joint", [](long) { return StepKind::JonesJoint; }};
}

Algorithm Algorithm::frank_wolfe() {
  return {"fw", [](long) { return StepKind::FrankWolfe; }};
}

Algorithm Algorithm::mixed(long period) {
  if (period < 1) throw Error(ErrorCode::InvalidInput, "mixed period must be >= 1");
  return {"mixed(" + std::to_string(period) + ")",
          [period](long k) { return k % period == 0 ? StepKind::Jones : StepKind::FrankWolfe; }};
}

Algorithm Algorithm::mixed(std::string id, std::function<StepKind(long)> policy) {
  if (!policy) throw Error(ErrorCode::InvalidInput, "mixed policy must be callable");
  return {std::move(id), std::move(policy)};
}

Trace run_deterministic(const Objective& f, const AtomSet& atoms, const Point& w0, const Schedules& schedules,
                        const Algorithm& algorithm, const DeterministicOptions& options) {
  if (options.T < 1) throw Error(ErrorCode::InvalidInput, "T must be >= 1");
  require_point(w0, "start point");
  if (static_cast<std::size_t>(w0.size()) != atoms.dim()) throw Error(ErrorCode::InvalidInput, "start point dimension mismatch");

  Trace trace;
  trace.meta.problem = options.problem_id;
  trace.meta.algorithm = algorithm.id;
  trace.meta.seed = options.seed;
  trace.meta.eta_id = schedules.eta.id;
  trace.meta.eps_id = schedules.eps.id;
  trace.meta.index_base = 0;

  Rng oracle_rng(options.seed, 1);
  Point w = w0;

  std::optional<Eigen::VectorXd> weights;
  if (options.record_weights) {
    if (!atoms.is_finite()) throw Error(ErrorCode::InvalidInput, "convex weights are tracked only for finite atoms");
    if (options.start_weights) {
      weights = *options.start_weights;
    } else {
      const auto& a = atoms.atoms();
      for (std::size_t i = 0; i < a.size() && !weights; ++i) {
        if (a[i] == w0) {
          weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(a.size()));
          (*weights)[static_cast<Eigen::Index>(i)] = 1.0;
        }
      }
      if (!weights) throw Error(ErrorCode::InvalidInput, "start weights required when w0 is not an atom");
    }
  }

  trace.records.reserve(static_cast<std::size_t>(options.T) + 1);
  for (long k = 0; k <= options.T; ++k) {
    TraceRecord rec;
    rec.k = k;
    rec.f_w = f.value(w);
    if (!std::isfinite(rec.f_w)) throw Error(ErrorCode::InvalidInput, "objective is not finite along the run");
    rec.gap = duality_gap(f, w, atoms);
    if (options.f_star) rec.err = rec.f_w - *options.f_star;
    rec.eps = schedules.eps(k);
    if (options.record_iterates) trace.iterates.push_back(w);
    if (weights) trace.weights.push_back(*weights);

    const StepKind kind = algorithm.policy(k);
    if (kind != StepKind::JonesJoint) {
      const double eta = schedules.eta(k);
      if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorCode::InvalidSchedule, "eta(" + std::to_string(k) + ") = " + std::to_string(eta) + " outside [0, 1]");
      }
      rec.eta = eta;
    }
    if (!(rec.eps >= 0.0)) throw Error(ErrorCode::InvalidSchedule, "eps(" + std::to_string(k) + ") is negative");

    if (k < options.T) {
      StepResult step;
      switch (kind) {
        case StepKind::Jones: step = jones_step(f, atoms, w, *rec.eta, rec.eps, options.mode, &oracle_rng); break;
        case StepKind::JonesJoint:
          step = jones_step_joint(f, atoms, w, rec.eps, options.mode, &oracle_rng);
          rec.eta = step.eta;
          break;
        case StepKind::FrankWolfe: step = fw_step(f, atoms, w, *rec.eta, rec.eps, options.mode, &oracle_rng); break;
      }
      if (weights) {
        *weights *= (1.0 - step.eta);
        (*weights)[static_cast<Eigen::Index>(step.index.value())] += step.eta;
      }
      w = std::move(step.w_next);
    }
    trace.records.push_back(rec);
  }
  trace.final_w = w;
  return trace;
}

}  // namespace greedyopt
