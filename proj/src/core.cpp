#include "greedyopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace greedyopt {

void require_point(const Point& p, const char* what) {
  if (p.size() == 0) throw Error(ErrorCode::InvalidInput, std::string(what) + ": empty point");
  if (!p.allFinite()) throw Error(ErrorCode::InvalidInput, std::string(what) + ": non-finite coordinate");
}

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                                             " vs " + std::to_string(b.size()) + ")");
  }
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p[i++] = c;
  return p;
}

// ---------------------------------------------------------------------------

LeastSquaresComponent::LeastSquaresComponent(Point x, double y) : x_(std::move(x)), y_(y) {
  require_point(x_, "least-squares design vector");
  if (!std::isfinite(y_)) throw Error(ErrorCode::InvalidInput, "least-squares target must be finite");
}

double LeastSquaresComponent::value(const Point& w) const {
  const double r = x_.dot(w) - y_;
  return r * r;
}

Point LeastSquaresComponent::gradient(const Point& w) const { return (2.0 * (x_.dot(w) - y_)) * x_; }

FiniteSumObjective::FiniteSumObjective(std::vector<std::shared_ptr<const Objective>> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidInput, "finite sum needs at least one component");
  dim_ = components_.front()->dim();
  for (const auto& c : components_) {
    if (!c) throw Error(ErrorCode::InvalidInput, "null component");
    if (c->dim() != dim_) throw Error(ErrorCode::InvalidInput, "finite sum components differ in dimension");
  }
}

double FiniteSumObjective::value(const Point& w) const {
  double sum = 0.0;
  for (const auto& c : components_) sum += c->value(w);
  return sum / static_cast<double>(components_.size());
}

Point FiniteSumObjective::gradient(const Point& w) const {
  Point sum = Point::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& c : components_) sum += c->gradient(w);
  return sum / static_cast<double>(components_.size());
}

double FiniteSumObjective::minibatch_value(std::span<const std::size_t> indices, const Point& w) const {
  if (indices.empty()) throw Error(ErrorCode::InvalidInput, "empty minibatch");
  double sum = 0.0;
  for (std::size_t i : indices) sum += components_.at(i)->value(w);
  return sum / static_cast<double>(indices.size());
}

Point FiniteSumObjective::minibatch_gradient(std::span<const std::size_t> indices, const Point& w) const {
  if (indices.empty()) throw Error(ErrorCode::InvalidInput, "empty minibatch");
  Point sum = Point::Zero(static_cast<Eigen::Index>(dim_));
  for (std::size_t i : indices) sum += components_.at(i)->gradient(w);
  return sum / static_cast<double>(indices.size());
}

MinibatchObjective::MinibatchObjective(const FiniteSumObjective& fsum, std::vector<std::size_t> indices)
    : fsum_(&fsum), indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorCode::InvalidInput, "empty minibatch");
  for (std::size_t i : indices_) {
    if (i >= fsum.size()) throw Error(ErrorCode::InvalidInput, "minibatch index out of range");
  }
}

// ---------------------------------------------------------------------------

AtomSet AtomSet::finite(std::vector<Point> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::InvalidInput, "atom list is empty");
  const auto dim = atoms.front().size();
  for (const auto& a : atoms) {
    require_point(a, "atom");
    if (a.size() != dim) throw Error(ErrorCode::InvalidInput, "atoms differ in dimension");
  }
  return AtomSet(FiniteAtoms{std::move(atoms)}, static_cast<std::size_t>(dim));
}

AtomSet AtomSet::ball(Point center, double radius) {
  require_point(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidInput, "ball radius must be positive");
  const auto dim = static_cast<std::size_t>(center.size());
  return AtomSet(Ball{std::move(center), radius}, dim);
}

const std::vector<Point>& AtomSet::atoms() const {
  if (is_ball()) throw Error(ErrorCode::UnsupportedDomain, "ball domain has no finite atom list");
  return std::get<FiniteAtoms>(domain_).atoms;
}

const Ball& AtomSet::as_ball() const {
  if (!is_ball()) throw Error(ErrorCode::UnsupportedDomain, "domain is not a ball");
  return std::get<Ball>(domain_);
}

std::size_t AtomSet::size() const { return atoms().size(); }

double AtomSet::diameter() const {
  if (is_ball()) return 2.0 * as_ball().radius;
  const auto& a = atoms();
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, (a[i] - a[j]).norm());
  }
  return best;
}

Point AtomSet::default_start() const { return is_ball() ? as_ball().center : atoms().front(); }

bool AtomSet::ball_contains(const Point& w, double tol) const {
  const auto& b = as_ball();
  return (w - b.center).norm() <= b.radius * (1.0 + tol) + tol;
}

// ---------------------------------------------------------------------------

const char* to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::Exact: return "exact";
    case OracleMode::Adversarial: return "adversarial";
    case OracleMode::SeededRandom: return "seeded-random";
  }
  return "exact";
}

OracleMode oracle_mode_from_string(const std::string& s) {
  if (s == "exact") return OracleMode::Exact;
  if (s == "adversarial") return OracleMode::Adversarial;
  if (s == "seeded-random") return OracleMode::SeededRandom;
  throw Error(ErrorCode::InvalidInput, "unknown oracle mode '" + s + "'");
}

namespace {

void check_gradient(const AtomSet& atoms, const Point& g) {
  require_point(g, "lmo direction");
  if (static_cast<std::size_t>(g.size()) != atoms.dim()) {
    throw Error(ErrorCode::InvalidInput, "lmo: gradient dimension " + std::to_string(g.size()) +
                                             " does not match atom dimension " + std::to_string(atoms.dim()));
  }
}

// Unit vector orthogonal to u built from the lowest-index coordinate axis not
// parallel to u. Empty when dim == 1.
std::optional<Point> rotation_partner(const Point& u) {
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    Point v = -u[j] * u;
    v[j] += 1.0;
    const double n = v.norm();
    if (n > 1e-8) return Point(v / n);
  }
  return std::nullopt;
}

LmoResult ball_rotated(const Ball& ball, const Point& g, double exact_value, double eps, OracleMode mode, Rng* rng) {
  const double gnorm = g.norm();
  const Point u = -g / gnorm;
  const double budget = ball.radius * gnorm;  // slack at angle theta is budget * (1 - cos theta)
  auto atom_at = [&](const Point& dir) {
    LmoResult r;
    r.d = ball.center + ball.radius * dir;
    r.value = g.dot(r.d);
    return r;
  };
  LmoResult exact = atom_at(u);
  exact.value = exact_value;

  const auto partner = rotation_partner(u);
  double theta_max = 0.0;
  if (eps >= 2.0 * budget) {
    theta_max = std::numbers::pi;
  } else if (partner) {
    theta_max = std::acos(std::clamp(1.0 - eps / budget, -1.0, 1.0));
  }
  if (theta_max <= 0.0) return exact;

  double theta = theta_max;
  if (mode == OracleMode::SeededRandom) {
    if (rng == nullptr) throw Error(ErrorCode::InvalidInput, "seeded-random oracle needs an rng");
    theta = theta_max * rng->uniform01();
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Point dir = partner ? Point(std::cos(theta) * u + std::sin(theta) * *partner) : Point(-u);
    LmoResult r = atom_at(dir);
    const double slack = r.value - exact_value;
    if (slack <= eps && slack >= 0.0) return r;
    if (!partner) break;
    theta *= 1.0 - 1e-9;
  }
  return exact;
}

}  // namespace

LmoResult lmo(const AtomSet& atoms, const Point& g) {
  check_gradient(atoms, g);
  LmoResult r;
  if (atoms.is_ball()) {
    const auto& b = atoms.as_ball();
    const double gnorm = g.norm();
    if (gnorm == 0.0) {
      r.d = b.center;
      r.d[0] += b.radius;
    } else {
      // Rescale by the largest entry first so that g and -g give exactly
      // opposite atoms.
      const Point v = g / g.cwiseAbs().maxCoeff();
      r.d = b.center - (b.radius / v.norm()) * v;
    }
    r.value = g.dot(r.d);
    return r;
  }
  const auto& a = atoms.atoms();
  std::size_t best = 0;
  double best_value = g.dot(a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double v = g.dot(a[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  r.d = a[best];
  r.value = best_value;
  r.index = best;
  return r;
}

LmoResult approx_lmo(const AtomSet& atoms, const Point& g, double eps, OracleMode mode, Rng* rng) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidInput, "approx_lmo: eps must be >= 0");
  LmoResult exact = lmo(atoms, g);
  if (mode == OracleMode::Exact || eps == 0.0) return exact;

  if (atoms.is_ball()) {
    if (g.norm() == 0.0) return exact;
    return ball_rotated(atoms.as_ball(), g, exact.value, eps, mode, rng);
  }

  const auto& a = atoms.atoms();
  std::vector<std::size_t> admissible;
  std::vector<double> values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    values[i] = g.dot(a[i]);
    if (values[i] - exact.value <= eps) admissible.push_back(i);
  }
  std::size_t pick = exact.index.value();
  if (mode == OracleMode::Adversarial) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i : admissible) {
      if (values[i] >= worst) {
        worst = values[i];
        pick = i;
      }
    }
  } else {
    if (rng == nullptr) throw Error(ErrorCode::InvalidInput, "seeded-random oracle needs an rng");
    pick = admissible[rng->uniform_index(admissible.size())];
  }
  LmoResult r;
  r.d = a[pick];
  r.value = values[pick];
  r.index = pick;
  return r;
}

double duality_gap(const Objective& f, const Point& w, const AtomSet& atoms) {
  const Point g = f.gradient(w);
  return g.dot(w) - lmo(atoms, g).value;
}

double bregman(const Objective& f, const Point& w, const Point& y) {
  require_same_dim(w, y, "bregman");
  return f.value(w) - f.value(y) - f.gradient(y).dot(w - y);
}

double curvature_bound_smooth(double smoothness, const AtomSet& atoms) {
  if (!(smoothness > 0.0)) throw Error(ErrorCode::InvalidInput, "smoothness constant must be positive");
  const double d = atoms.diameter();
  return smoothness * d * d;
}

Point sample_feasible(const AtomSet& atoms, Rng& rng) {
  if (atoms.is_ball()) {
    const auto& b = atoms.as_ball();
    Point dir(static_cast<Eigen::Index>(atoms.dim()));
    do {
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = rng.normal();
    } while (dir.norm() == 0.0);
    const double radius = b.radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(atoms.dim()));
    return b.center + (radius / dir.norm()) * dir;
  }
  const auto& a = atoms.atoms();
  std::vector<double> weights(a.size());
  double total = 0.0;
  for (auto& x : weights) total += (x = rng.exponential());
  Point w = Point::Zero(static_cast<Eigen::Index>(atoms.dim()));
  for (std::size_t i = 0; i < a.size(); ++i) w += (weights[i] / total) * a[i];
  return w;
}

Point sample_atom(const AtomSet& atoms, Rng& rng) {
  if (atoms.is_ball()) {
    const auto& b = atoms.as_ball();
    Point dir(static_cast<Eigen::Index>(atoms.dim()));
    do {
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = rng.normal();
    } while (dir.norm() == 0.0);
    return b.center + (b.radius / dir.norm()) * dir;
  }
  return atoms.atoms()[rng.uniform_index(atoms.size())];
}

double empirical_curvature(const Objective& f, const AtomSet& atoms, std::size_t samples, Rng& rng) {
  if (samples == 0) throw Error(ErrorCode::InvalidInput, "empirical_curvature needs at least one sample");
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point w = sample_feasible(atoms, rng);
    const Point d = sample_atom(atoms, rng);
    const double eta = rng.uniform_open01();
    const Point moved = (1.0 - eta) * w + eta * d;
    best = std::max(best, 2.0 / (eta * eta) * bregman(f, moved, w));
  }
  return best;
}

}  // namespace greedyopt
