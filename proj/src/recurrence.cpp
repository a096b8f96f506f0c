#include "greedyopt/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "greedyopt/errors.hpp"

namespace greedyopt::recurrence {

namespace {

double checked_eta(const EtaRule& eta, long k) {
  const double v = eta(k);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::InvalidSchedule, "eta(" + std::to_string(k) + ") = " + std::to_string(v) + " outside [0, 1]");
  }
  return v;
}

void check_horizon(long T) {
  if (T < 1) throw Error(ErrorCode::InvalidInput, "T must be >= 1");
}

}  // namespace

std::vector<double> simulate(double e0, double C, const EtaRule& eta, long T) {
  check_horizon(T);
  if (!(e0 >= 0.0)) throw Error(ErrorCode::InvalidInput, "e0 must be >= 0");
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidInput, "C must be > 0");
  std::vector<double> e(static_cast<std::size_t>(T) + 1);
  e[0] = e0;
  for (long k = 0; k < T; ++k) {
    const double h = checked_eta(eta, k);
    e[k + 1] = (1.0 - h) * e[k] + C * h * h;
  }
  return e;
}

std::vector<double> simulate_approx(double e0, double M, const EtaRule& eta, const EtaRule& eps, long T) {
  check_horizon(T);
  std::vector<double> e(static_cast<std::size_t>(T) + 1);
  e[0] = e0;
  for (long k = 0; k < T; ++k) {
    const double h = checked_eta(eta, k);
    e[k + 1] = (1.0 - h) * e[k] + h * eps(k) + 0.5 * M * h * h;
  }
  return e;
}

double greedy_eta(double e, double C) { return std::clamp(e / (2.0 * C), 0.0, 1.0); }

std::vector<double> simulate_greedy(double e0, double C, long T) {
  check_horizon(T);
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidInput, "C must be > 0");
  std::vector<double> e(static_cast<std::size_t>(T) + 1);
  e[0] = e0;
  for (long k = 0; k < T; ++k) {
    const double h = greedy_eta(e[k], C);
    e[k + 1] = (1.0 - h) * e[k] + C * h * h;
  }
  return e;
}

LowerBoundReport lower_bound_report(double e0, double C, long T) {
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidInput, "C must be > 0");
  if (!(e0 >= 0.0) || e0 > 2.0 * C) {
    throw Error(ErrorCode::PreconditionViolation, "lower bound requires 0 <= e0 <= 2C");
  }
  const auto e = simulate_greedy(e0, C, T);
  LowerBoundReport r;
  r.a = std::min(e0, C);
  r.min_scaled = e[0] * 2.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double scaled = e[k] * (static_cast<double>(k) + 2.0);
    if (scaled < r.min_scaled) {
      r.min_scaled = scaled;
      r.argmin_k = static_cast<long>(k);
    }
  }
  r.holds = r.min_scaled >= r.a * (1.0 - 1e-12);
  return r;
}

bool verify_lower_bound(double e0, double C, long T) { return lower_bound_report(e0, C, T).holds; }

double compute_K(double rho, double p, double lambda, double R2, double c, double L) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidParams, "rho must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidParams, "p must lie in [0, 1)");
  if (!(lambda >= 1.0)) throw Error(ErrorCode::InvalidParams, "lambda must be >= 1");
  if (!(c >= 0.0)) throw Error(ErrorCode::InvalidParams, "c must be >= 0");
  const double q = 1.0 - p;
  const double cl2 = c * c * L * L;
  const double first = std::sqrt(1.0 / (2.0 * rho)) * c * L / q;
  const double second = std::sqrt((lambda * R2 + cl2) / (rho * q) + cl2 / (2.0 * rho * q * q));
  return (first + second) * (first + second);
}

double largest_root(double A, double B) {
  const double s = 0.5 * (B + std::sqrt(B * B + 4.0 * A));
  return s * s;
}

std::vector<double> simulate_arsfw(const ArsfwRecurrenceParams& prm, long T) {
  check_horizon(T);
  if (!(prm.p > 0.0 && prm.p < 1.0)) throw Error(ErrorCode::InvalidSchedule, "p must lie in (0, 1)");
  if (!(prm.rho > 0.0)) throw Error(ErrorCode::InvalidParams, "rho must be > 0");
  if (!(prm.e1 >= 0.0)) throw Error(ErrorCode::InvalidInput, "e1 must be >= 0");
  std::vector<double> e(static_cast<std::size_t>(T));
  e[0] = prm.e1;
  const double quad = prm.lambda * prm.R2 / prm.rho;
  const double lin = std::sqrt(2.0 / prm.rho) * prm.L;
  for (long k = 1; k < T; ++k) {
    const double eta = std::pow(static_cast<double>(k), -prm.p);
    const double sigma = prm.c * std::pow(eta, 1.5);
    const double A = (1.0 - eta) * e[k - 1] + quad * eta * eta;
    e[k] = largest_root(A, lin * sigma);
  }
  return e;
}

bool verify_arsfw_recurrence(const ArsfwRecurrenceParams& prm, long T) {
  if (prm.e1 > prm.K * 1.0) throw Error(ErrorCode::PreconditionViolation, "requires e_1 <= K eta_1");
  const auto e = simulate_arsfw(prm, T);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double eta = std::pow(static_cast<double>(i + 1), -prm.p);
    if (e[i] > prm.K * eta * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace greedyopt::recurrence
