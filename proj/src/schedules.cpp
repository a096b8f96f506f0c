#include "greedyopt/schedules.hpp"

#include <cmath>

#include "greedyopt/errors.hpp"

namespace greedyopt::rules {

namespace {
std::string fmt_param(double v) {
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}
}  // namespace

Rule standard_eta() {
  return {"standard", [](long k) { return 2.0 / (static_cast<double>(k) + 2.0); }};
}

Rule power(double q, long first_index) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw Error(ErrorCode::InvalidSchedule, "power rule exponent must be >= 0");
  return {"power(" + fmt_param(q) + ")", [q, first_index](long k) {
            return std::pow(static_cast<double>(k - first_index + 1), -q);
          }};
}

Rule constant(double value) {
  return {"constant(" + fmt_param(value) + ")", [value](long) { return value; }};
}

Rule zero() {
  return {"zero", [](long) { return 0.0; }};
}

Rule scaled(double c, Rule base) {
  std::string id = fmt_param(c) + "*" + base.id;
  return {std::move(id), [c, f = std::move(base.at)](long k) { return c * f(k); }};
}

Rule corollary_abs(double c) {
  return {"corollary(" + fmt_param(c) + ")", [c](long k) {
            const double d = static_cast<double>(k) + 2.0;
            return 4.0 * c / (d * d);
          }};
}

}  // namespace greedyopt::rules
