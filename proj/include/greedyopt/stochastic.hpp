#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greedyopt/core.hpp"
#include "greedyopt/schedules.hpp"
#include "greedyopt/trace.hpp"

namespace greedyopt {

/// Schedules for the stochastic runners; all indexed from k = 1.
struct StochasticSchedules {
  Rule eta;
  Rule eps;
  Rule batch;  // rounded to the nearest integer, must be >= 1
  Rule sigma;
};

namespace presets {

/// b_k = t, eta_k = t^{-1/2}, eps_k = c eta_k.
StochasticSchedules asj_fixed_horizon(long t, double c);
/// b_k = k, eta_k = k^{-1/2}, eps_k = c eta_k.
StochasticSchedules asj_anytime(double c);
/// b_k = 1, eta_k = 2 / (k + 2), eps_k = c eta_k.
StochasticSchedules single_sample_standard(double c = 0.0);
/// eta_k = k^{-p}, eps_k = (lambda - 1) R2 / rho * eta_k, sigma_k = c eta_k^{3/2}.
StochasticSchedules arsfw(double p, double c, double lambda, double R2, double rho);
/// As arsfw but sigma_k = c / t^{3/4} for a fixed horizon t.
StochasticSchedules arsfw_fixed_sigma(long t, double p, double c, double lambda, double R2, double rho);

}  // namespace presets

enum class AsjInner {
  ExactJoint,  // (eta, d) minimized jointly, no slack
  FixedEta,    // eta_k from the schedule, slack eta_k eps_k on the atom choice
};

struct StochasticOptions {
  long T = 1;
  std::uint64_t seed = 0;
  OracleMode mode = OracleMode::Exact;
  std::optional<double> f_star;
  std::optional<Point> start;  // defaults to atoms.default_start()
  bool record_iterates = false;
  std::string problem_id;
};

/// Approximate stochastic Jones. FiniteAtoms only. Records k = 1..T with
/// f(w_k), f at the eta-weighted average of w_1..w_k, and the full-gradient
/// duality gap at w_k.
Trace asj_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const StochasticSchedules& sched, AsjInner inner,
              const StochasticOptions& options);

/// Approximate stochastic Frank-Wolfe with minibatch gradients.
Trace asfw_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const StochasticSchedules& sched,
               const StochasticOptions& options);

/// Draws b indices uniformly with replacement from [0, n).
std::vector<std::size_t> sample_minibatch(std::size_t n, std::size_t b, Rng& rng);

/// <E[d], grad f(w)> - min_S <d, grad f(w)> where E[d] is the mean of the n
/// single-component LMO outputs at w.
double expected_lmo_violation(const FiniteSumObjective& fsum, const AtomSet& atoms, const Point& w);

/// Mean of the n single-component LMO outputs at w.
Point expected_lmo_direction(const FiniteSumObjective& fsum, const AtomSet& atoms, const Point& w);

// ---------------------------------------------------------------------------
// Regularized stochastic Frank-Wolfe with Phi(w) = ||w - w1||^2 / 2.

struct ArsfwParams {
  double p = 0.5;
  double c = 1.0;
  double lambda = 1.0;
};

enum class SigmaMode { Varying, Fixed };

struct ArsfwOptions {
  long T = 1;
  std::uint64_t seed = 0;
  SigmaMode sigma_mode = SigmaMode::Varying;
  long sigma_horizon = 0;  // t for SigmaMode::Fixed; defaults to T
  OracleMode mode = OracleMode::Exact;
  std::optional<double> f_star;
  std::optional<Point> w1;  // Phi's minimizer; defaults to atoms.default_start()
  std::string problem_id;
};

struct ArsfwRun {
  Trace trace;
  ArsfwParams params;
  double rho = 1.0;
  double R2 = 0.0;
  Point w1;
  bool ball_domain = false;
  Ball ball{Point(), 0.0};          // valid when ball_domain
  std::vector<double> etas;         // eta_1..eta_T
  std::vector<double> sigmas;       // sigma_1..sigma_T
  std::vector<Point> iterates;      // w_1..w_{T+1}
  std::vector<Point> gradients;     // g_1..g_T
  std::vector<Point> g_bars;        // g_bar_1..g_bar_{T+1}
  std::vector<double> proxy_errors; // e_k = F_k(w_k) - F_k(w*_k), ball domains, k = 1..T+1
};

/// R^2 = max_W Phi - Phi(w1): max over atoms for finite sets, (2r)^2 / 2 on a
/// ball (the value for w1 anywhere in the ball, which also keeps
/// 2 R^2 / rho >= diam^2).
double arsfw_R2(const AtomSet& atoms, const Point& w1);

StochasticSchedules arsfw_schedules(const ArsfwParams& params, double R2, double rho, const ArsfwOptions& options);

ArsfwRun arsfw_run(const FiniteSumObjective& fsum, const AtomSet& atoms, const ArsfwParams& params,
                   const ArsfwOptions& options);

/// Closed-form minimizer of F_k(w) = g_bar^T w + Phi(w) over a ball.
Point arsfw_proxy_minimizer(const ArsfwRun& run, const Point& g_bar);

struct LazyBoundReport {
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  long worst_t = 0;  // prefix length with the smallest rhs - lhs margin
};

/// Checks sum_{k<=t} sigma_k g_k^T (w*_k - w_ref) <= sum 2 sigma_k^2 ||g_k||^2 / rho + R^2
/// for every prefix t <= t_max (t_max < 0 means all T). Ball domains only.
LazyBoundReport lazy_bound_report(const ArsfwRun& run, const Point& w_ref, long t_max = -1);
bool verify_lazy_bound(const ArsfwRun& run, const Point& w_ref);

struct KBoundReport {
  bool holds = true;
  double K = 0.0;
  double worst_ratio = 0.0;  // max_k e_k / (K eta_k)
  long worst_k = 0;
};

/// e_k <= K eta_k + 1e-9 at every k, with K from compute_K and the given
/// Lipschitz constant. Ball domains only.
KBoundReport k_bound_report(const ArsfwRun& run, double lipschitz);
bool verify_k_bound(const ArsfwRun& run, double lipschitz);

}  // namespace greedyopt
