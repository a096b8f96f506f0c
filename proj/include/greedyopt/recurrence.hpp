#pragma once

#include <functional>
#include <vector>

namespace greedyopt::recurrence {

using EtaRule = std::function<double(long)>;

/// e_{k+1} = (1 - eta_k) e_k + C eta_k^2 for k = 0..T-1; returns e_0..e_T.
std::vector<double> simulate(double e0, double C, const EtaRule& eta, long T);

/// e_{k+1} = (1 - eta_k) e_k + eta_k eps_k + (M/2) eta_k^2, the worst case
/// allowed for an eps_k-approximate Jones or Frank-Wolfe run.
std::vector<double> simulate_approx(double e0, double M, const EtaRule& eta, const EtaRule& eps, long T);

/// Step size minimizing (1 - eta) e + C eta^2 over [0, 1]: clamp(e / 2C).
double greedy_eta(double e, double C);

/// The recurrence driven by greedy_eta at every step; returns e_0..e_T.
std::vector<double> simulate_greedy(double e0, double C, long T);

struct LowerBoundReport {
  bool holds = false;
  double a = 0.0;             // min(e0, C)
  double min_scaled = 0.0;    // min_k e_k (k + 2)
  long argmin_k = 0;
};

/// Checks e_k (k + 2) >= min(e0, C) (1 - 1e-12) along the greedy sequence.
/// Requires e0 <= 2C.
LowerBoundReport lower_bound_report(double e0, double C, long T);
bool verify_lower_bound(double e0, double C, long T);

struct ArsfwRecurrenceParams {
  double K = 0.0;
  double p = 0.5;
  double lambda = 1.0;
  double R2 = 1.0;
  double rho = 1.0;
  double c = 1.0;
  double L = 1.0;
  double e1 = 0.0;
};

/// Closed-form K for the regularized stochastic Frank-Wolfe error recurrence.
double compute_K(double rho, double p, double lambda, double R2, double c, double L);

/// Largest e solving e = A + B sqrt(e), A, B >= 0.
double largest_root(double A, double B);

/// Worst-case sequence with eta_k = k^-p, sigma_k = c eta_k^{3/2}:
/// e_{k+1} = largest root of e = (1 - eta_k) e_k + (lambda R2 / rho) eta_k^2
///                              + sqrt(2 / rho) sigma_k L sqrt(e).
/// Returns e_1..e_T (index 0 holds e_1).
std::vector<double> simulate_arsfw(const ArsfwRecurrenceParams& params, long T);

/// e_k <= K eta_k for all k <= T along simulate_arsfw.
bool verify_arsfw_recurrence(const ArsfwRecurrenceParams& params, long T);

}  // namespace greedyopt::recurrence
