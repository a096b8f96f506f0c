#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedyopt/core.hpp"

namespace greedyopt {

/// Analytic constants of a least-squares instance, all taken over W.
struct ProblemConstants {
  double smoothness = 0.0;   // 2 * lambda_max((1/n) sum x x^T)
  double diameter = 0.0;     // D
  double curvature = 0.0;    // M = smoothness * D^2, for f
  double component_curvature = 0.0;  // 2 max ||x_i||^2 D^2, bounds every f_i
  double lipschitz = 0.0;    // L = max_i max_{w in W} ||grad f_i(w)||
};

struct ProblemInstance {
  std::string name;
  std::map<std::string, std::string> params;
  std::shared_ptr<const FiniteSumObjective> fsum;
  AtomSet atoms;
  std::vector<Point> xs;
  std::vector<double> ys;
  Point start;
  std::optional<Point> w_star;
  std::optional<double> f_star;
  ProblemConstants constants;
};

struct DomainSpec {
  enum class Kind { Hull, Ball };
  Kind kind = Kind::Hull;
  double radius = 1.0;          // Ball
  std::size_t hull_atoms = 0;   // random instances: number of atoms (0 -> dim + 1)

  static DomainSpec hull(std::size_t atoms = 0) { return {Kind::Hull, 1.0, atoms}; }
  static DomainSpec ball(double r) { return {Kind::Ball, r, 0}; }
};

/// The three unit vectors at 120 degrees, x1 = (0, 1).
std::array<Point, 3> triangle_atoms();

/// f(w) = (1/3) sum (x_i^T w - y_i)^2 over the triangle's hull or the ball of
/// radius r at the origin. The optimum is attached analytically.
ProblemInstance make_triangle_ls(const std::array<double, 3>& y, DomainSpec domain);

/// x_1 = x_2 = (1, 1), y = (1, -1), ball of radius 1/2: f(w) = (x^T w)^2 + 1.
ProblemInstance make_two_point_ls();

/// n standard-normal least-squares components; hull atoms (standard normal)
/// or ball at the origin. The optimum comes from reference_optimum.
ProblemInstance make_random_finite_sum(std::size_t n, std::size_t dim, DomainSpec domain, Rng& rng);

/// Least-squares instance from explicit data, constants computed, no optimum.
ProblemInstance make_least_squares(std::string name, std::vector<Point> xs, std::vector<double> ys, AtomSet atoms);

/// Numerical optimum: closed-form or projected-gradient on balls, projected
/// gradient over simplex weights on hulls. Throws OracleFailure if the
/// gradient-mapping norm does not reach 1e-10 within the iteration cap or
/// the resulting duality gap exceeds 1e-8.
std::pair<Point, double> reference_optimum(const ProblemInstance& instance, long max_iterations = 1'000'000);

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// Builds an instance from a CLI id such as `asj-triangle`,
/// `asfw-triangle-biased(r=0.5)` or `random(n=5,dim=3,seed=7)`.
ProblemInstance make_problem(const std::string& id);

struct ProblemInfo {
  std::string id;
  std::string description;
};
std::vector<ProblemInfo> list_problems();

}  // namespace greedyopt
