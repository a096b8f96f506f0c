#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "greedyopt/errors.hpp"
#include "greedyopt/rng.hpp"

namespace greedyopt {

/// Dense real vector: iterates, atoms and gradients.
using Point = Eigen::VectorXd;

/// Throws InvalidInput unless every coordinate is finite and dim > 0.
void require_point(const Point& p, const char* what);
void require_same_dim(const Point& a, const Point& b, const char* what);

Point make_point(std::initializer_list<double> coords);

// ---------------------------------------------------------------------------
// Objectives

class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(const Point& w) const = 0;
  virtual Point gradient(const Point& w) const = 0;
};

/// f(w) = (x^T w - y)^2.
class LeastSquaresComponent final : public Objective {
 public:
  LeastSquaresComponent(Point x, double y);

  std::size_t dim() const override { return static_cast<std::size_t>(x_.size()); }
  double value(const Point& w) const override;
  Point gradient(const Point& w) const override;

  const Point& x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  Point x_;
  double y_;
};

/// f(w) = scale * ||w||^2.
class SquaredNormObjective final : public Objective {
 public:
  explicit SquaredNormObjective(std::size_t dim, double scale = 1.0) : dim_(dim), scale_(scale) {}
  std::size_t dim() const override { return dim_; }
  double value(const Point& w) const override { return scale_ * w.squaredNorm(); }
  Point gradient(const Point& w) const override { return 2.0 * scale_ * w; }

 private:
  std::size_t dim_;
  double scale_;
};

/// f(w) = g^T w.
class LinearObjective final : public Objective {
 public:
  explicit LinearObjective(Point g) : g_(std::move(g)) {}
  std::size_t dim() const override { return static_cast<std::size_t>(g_.size()); }
  double value(const Point& w) const override { return g_.dot(w); }
  Point gradient(const Point&) const override { return g_; }

 private:
  Point g_;
};

/// f(w) = (1/n) sum_i f_i(w).
class FiniteSumObjective final : public Objective {
 public:
  explicit FiniteSumObjective(std::vector<std::shared_ptr<const Objective>> components);

  std::size_t dim() const override { return dim_; }
  std::size_t size() const noexcept { return components_.size(); }
  const Objective& component(std::size_t i) const { return *components_.at(i); }

  double value(const Point& w) const override;
  Point gradient(const Point& w) const override;

  /// Minibatch mean (1/b) sum_{i in indices} f_i(w); repeated indices count
  /// with multiplicity.
  double minibatch_value(std::span<const std::size_t> indices, const Point& w) const;
  Point minibatch_gradient(std::span<const std::size_t> indices, const Point& w) const;

 private:
  std::vector<std::shared_ptr<const Objective>> components_;
  std::size_t dim_;
};

/// The minibatch mean of a finite sum viewed as an objective in its own right.
class MinibatchObjective final : public Objective {
 public:
  MinibatchObjective(const FiniteSumObjective& fsum, std::vector<std::size_t> indices);
  std::size_t dim() const override { return fsum_->dim(); }
  double value(const Point& w) const override { return fsum_->minibatch_value(indices_, w); }
  Point gradient(const Point& w) const override { return fsum_->minibatch_gradient(indices_, w); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  const FiniteSumObjective* fsum_;
  std::vector<std::size_t> indices_;
};

// ---------------------------------------------------------------------------
// Atom sets

struct FiniteAtoms {
  std::vector<Point> atoms;
};

/// The atoms are the sphere ||w - center|| = radius; the feasible set is the
/// closed ball.
struct Ball {
  Point center;
  double radius;
};

class AtomSet {
 public:
  static AtomSet finite(std::vector<Point> atoms);
  static AtomSet ball(Point center, double radius);

  std::size_t dim() const noexcept { return dim_; }
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(domain_); }
  bool is_finite() const noexcept { return !is_ball(); }

  const std::vector<Point>& atoms() const;  // FiniteAtoms only
  const Ball& as_ball() const;               // Ball only
  std::size_t size() const;                  // number of finite atoms

  /// Max pairwise atom distance, or 2 r for a ball.
  double diameter() const;

  /// Point of W used to start runs: first atom, or the ball center.
  Point default_start() const;

  /// True if w lies in the ball (within tol); FiniteAtoms always answers via
  /// the caller's convex weights, so this is only meaningful for balls.
  bool ball_contains(const Point& w, double tol = 1e-12) const;

 private:
  explicit AtomSet(std::variant<FiniteAtoms, Ball> d, std::size_t dim) : domain_(std::move(d)), dim_(dim) {}
  std::variant<FiniteAtoms, Ball> domain_;
  std::size_t dim_;
};

struct LmoResult {
  Point d;
  double value = 0.0;               // g^T d
  std::optional<std::size_t> index;  // atom index for FiniteAtoms
};

enum class OracleMode { Exact, Adversarial, SeededRandom };

const char* to_string(OracleMode mode);
OracleMode oracle_mode_from_string(const std::string& s);

/// Exact linear minimization over S. Ties on finite atoms go to the lowest
/// index; a zero gradient on a ball returns center + r e_1.
LmoResult lmo(const AtomSet& atoms, const Point& g);

/// Linear minimization with slack: the returned atom satisfies
/// g^T d <= min_S g^T d' + eps. `rng` is required only for SeededRandom.
LmoResult approx_lmo(const AtomSet& atoms, const Point& g, double eps, OracleMode mode, Rng* rng = nullptr);

/// max_{d in S} grad f(w)^T (w - d).
double duality_gap(const Objective& f, const Point& w, const AtomSet& atoms);

/// D_f(w, y) = f(w) - f(y) - grad f(y)^T (w - y).
double bregman(const Objective& f, const Point& w, const Point& y);

/// L * diam(S)^2.
double curvature_bound_smooth(double smoothness, const AtomSet& atoms);

/// Lower estimate of the curvature constant from random (w, d, eta) triples.
double empirical_curvature(const Objective& f, const AtomSet& atoms, std::size_t samples, Rng& rng);

/// Random point of W: Dirichlet(1,...,1) weights over finite atoms, or a
/// uniform draw from the ball.
Point sample_feasible(const AtomSet& atoms, Rng& rng);

/// Random element of S: uniform atom, or uniform point on the sphere.
Point sample_atom(const AtomSet& atoms, Rng& rng);

}  // namespace greedyopt
