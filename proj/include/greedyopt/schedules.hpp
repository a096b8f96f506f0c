#pragma once

#include <functional>
#include <string>

namespace greedyopt {

/// A named closed-form sequence k -> value.
struct Rule {
  std::string id;
  std::function<double(long)> at;

  double operator()(long k) const { return at(k); }
};

/// Step size and per-step oracle error for the deterministic runner.
struct Schedules {
  Rule eta;
  Rule eps;
};

namespace rules {

/// eta_k = 2 / (k + 2).
Rule standard_eta();

/// (k - first_index + 1)^(-q); with first_index = 1 this is k^(-q).
Rule power(double q, long first_index);

Rule constant(double value);
Rule zero();

/// c * base(k); used for eps_k = c eta_k.
Rule scaled(double c, Rule base);

/// Absolute Jones slack 4c / (k + 2)^2.
Rule corollary_abs(double c);

}  // namespace rules

}  // namespace greedyopt
