#pragma once

#include <functional>
#include <optional>
#include <string>

#include "greedyopt/core.hpp"
#include "greedyopt/schedules.hpp"
#include "greedyopt/trace.hpp"

namespace greedyopt {

struct StepResult {
  Point w_next;
  Point d;
  double eta = 0.0;
  std::optional<std::size_t> index;  // chosen atom for FiniteAtoms
};

/// Approximate Jones step with a fixed step size: the chosen atom satisfies
/// f((1-eta) w + eta d) <= min_S f((1-eta) w + eta d') + eps * eta.
/// FiniteAtoms only.
StepResult jones_step(const Objective& f, const AtomSet& atoms, const Point& w, double eta, double eps,
                      OracleMode mode = OracleMode::Exact, Rng* rng = nullptr);

/// Jones step choosing (eta, d) jointly over [0,1] x S, up to an absolute
/// slack abs_eps on the attained value. FiniteAtoms only.
StepResult jones_step_joint(const Objective& f, const AtomSet& atoms, const Point& w, double abs_eps,
                            OracleMode mode = OracleMode::Exact, Rng* rng = nullptr);

/// Approximate Frank-Wolfe step: d from approx_lmo on grad f(w).
StepResult fw_step(const Objective& f, const AtomSet& atoms, const Point& w, double eta, double eps,
                   OracleMode mode = OracleMode::Exact, Rng* rng = nullptr);

/// Minimizer of phi(eta) = f((1-eta) w + eta d) over [0,1] by golden-section
/// search to width 1e-10; endpoints win ties within rounding.
double line_minimize(const Objective& f, const Point& w, const Point& d);

/// grad f(w)^T d_chosen - min_S grad f(w)^T d.
double fw_slack_of_jones(const Objective& f, const AtomSet& atoms, const Point& w, const Point& d_chosen);

/// [f((1-eta) w + eta d_chosen) - min_S f((1-eta) w + eta d)] / eta, and 0
/// when eta == 0. FiniteAtoms only.
double jones_slack_of_fw(const Objective& f, const AtomSet& atoms, const Point& w, const Point& d_chosen, double eta);

enum class StepKind { Jones, JonesJoint, FrankWolfe };

/// Which step to take at iteration k.
struct Algorithm {
  std::string id;
  std::function<StepKind(long)> policy;

  static Algorithm jones();
  static Algorithm jones_joint();
  static Algorithm frank_wolfe();
  /// Jones at iterations with k % period == 0, Frank-Wolfe otherwise.
  static Algorithm mixed(long period);
  static Algorithm mixed(std::string id, std::function<StepKind(long)> policy);
};

struct DeterministicOptions {
  long T = 1;
  OracleMode mode = OracleMode::Exact;
  std::uint64_t seed = 0;
  std::optional<double> f_star;
  /// Convex weights of w0 over the finite atoms. When absent and w0 equals an
  /// atom, the unit weight vector of that atom is used.
  std::optional<Eigen::VectorXd> start_weights;
  bool record_iterates = false;
  bool record_weights = false;
  std::string problem_id;
};

/// Runs T steps from w0 (0-based: records k = 0..T). For JonesJoint steps the
/// eps rule is an absolute slack on the attained value and eta is chosen by
/// the step; otherwise eta_k comes from the schedule and eps_k is the
/// oracle error of the step.
Trace run_deterministic(const Objective& f, const AtomSet& atoms, const Point& w0, const Schedules& schedules,
                        const Algorithm& algorithm, const DeterministicOptions& options);

}  // namespace greedyopt
