#include "greedyopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace greedyopt {

namespace {

Eigen::MatrixXd second_moment(const std::vector<Point>& xs) {
  const auto dim = xs.front().size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& x : xs) A += x * x.transpose();
  return A / static_cast<double>(xs.size());
}

ProblemConstants compute_constants(const std::vector<Point>& xs, const std::vector<double>& ys, const AtomSet& atoms) {
  ProblemConstants c;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(second_moment(xs), Eigen::EigenvaluesOnly);
  c.smoothness = 2.0 * std::max(eig.eigenvalues().maxCoeff(), 0.0);
  c.diameter = atoms.diameter();
  c.curvature = c.smoothness * c.diameter * c.diameter;
  double max_sq = 0.0;
  for (const auto& x : xs) max_sq = std::max(max_sq, x.squaredNorm());
  c.component_curvature = 2.0 * max_sq * c.diameter * c.diameter;

  // ||grad f_i(w)|| = 2 |x_i^T w - y_i| ||x_i||; the residual is affine in w so
  // its extreme over W sits at an atom, or at c +- r x_i / ||x_i|| on a ball.
  double L = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double xn = xs[i].norm();
    double worst = 0.0;
    if (atoms.is_ball()) {
      const auto& b = atoms.as_ball();
      worst = std::abs(xs[i].dot(b.center) - ys[i]) + b.radius * xn;
    } else {
      for (const auto& a : atoms.atoms()) worst = std::max(worst, std::abs(xs[i].dot(a) - ys[i]));
    }
    L = std::max(L, 2.0 * worst * xn);
  }
  c.lipschitz = L;
  return c;
}

Point project_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return a + t * ab;
}

// Euclidean projection onto a planar triangle.
Point project_triangle(const Point& p, const std::array<Point, 3>& v) {
  const Point e0 = v[1] - v[0], e1 = v[2] - v[0], q = p - v[0];
  const double d00 = e0.dot(e0), d01 = e0.dot(e1), d11 = e1.dot(e1);
  const double d20 = q.dot(e0), d21 = q.dot(e1);
  const double denom = d00 * d11 - d01 * d01;
  const double s = (d11 * d20 - d01 * d21) / denom;
  const double t = (d00 * d21 - d01 * d20) / denom;
  if (s >= 0.0 && t >= 0.0 && s + t <= 1.0) return p;
  Point best = project_segment(p, v[0], v[1]);
  for (const auto& cand : {project_segment(p, v[1], v[2]), project_segment(p, v[2], v[0])}) {
    if ((cand - p).squaredNorm() < (best - p).squaredNorm()) best = cand;
  }
  return best;
}

Point project_ball(const Point& p, const Ball& b) {
  const Point v = p - b.center;
  const double n = v.norm();
  if (n <= b.radius) return p;
  return b.center + (b.radius / n) * v;
}

struct SmoothProblem {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> project;
  double lipschitz;
};

// Accelerated projected gradient with function-value restart. Returns the
// iterate once the gradient-mapping norm drops to `tol`.
std::optional<Eigen::VectorXd> projected_gradient(const SmoothProblem& prob, Eigen::VectorXd x, double tol, long max_iter) {
  const double L = std::max(prob.lipschitz, 1e-300);
  auto mapping_norm = [&](const Eigen::VectorXd& z) {
    return L * (z - prob.project(z - prob.gradient(z) / L)).norm();
  };
  x = prob.project(x);
  if (mapping_norm(x) <= tol) return x;
  Eigen::VectorXd y = x;
  double fx = prob.value(x);
  double t = 1.0;
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd x_new = prob.project(y - prob.gradient(y) / L);
    const double f_new = prob.value(x_new);
    // Restart on an increase. A plain step from x can only look like an
    // increase through rounding, so after a restart the step is taken.
    if (f_new > fx && t > 1.0) {
      y = x;
      t = 1.0;
      continue;
    }
    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x_new + ((t - 1.0) / t_new) * (x_new - x);
    x = std::move(x_new);
    fx = f_new;
    t = t_new;
    if (mapping_norm(x) <= tol) return x;
  }
  return std::nullopt;
}

std::map<std::string, std::string> parse_params(const std::string& body, const std::string& id) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidInput, "problem '" + id + "': expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_double(const std::map<std::string, std::string>& p, const std::string& key, double fallback, const std::string& id) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "problem '" + id + "': bad number for " + key + ": '" + it->second + "'");
  }
}

long param_long(const std::map<std::string, std::string>& p, const std::string& key, long fallback, const std::string& id) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "problem '" + id + "': bad integer for " + key + ": '" + it->second + "'");
  }
}

void reject_unknown(const std::map<std::string, std::string>& p, std::initializer_list<const char*> allowed, const std::string& id) {
  for (const auto& [k, v] : p) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw Error(ErrorCode::InvalidInput, "problem '" + id + "': unknown parameter '" + k + "'");
    }
  }
}

}  // namespace

std::array<Point, 3> triangle_atoms() {
  const double h = std::sqrt(3.0) / 2.0;
  return {make_point({0.0, 1.0}), make_point({-h, -0.5}), make_point({h, -0.5})};
}

ProblemInstance make_least_squares(std::string name, std::vector<Point> xs, std::vector<double> ys, AtomSet atoms) {
  if (xs.empty() || xs.size() != ys.size()) throw Error(ErrorCode::InvalidInput, "least squares needs matching x and y lists");
  std::vector<std::shared_ptr<const Objective>> comps;
  comps.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (static_cast<std::size_t>(xs[i].size()) != atoms.dim()) throw Error(ErrorCode::InvalidInput, "design vector dimension mismatch");
    comps.push_back(std::make_shared<LeastSquaresComponent>(xs[i], ys[i]));
  }
  ProblemConstants constants = compute_constants(xs, ys, atoms);
  Point start = atoms.default_start();
  return ProblemInstance{std::move(name), {}, std::make_shared<FiniteSumObjective>(std::move(comps)), std::move(atoms),
                         std::move(xs), std::move(ys), std::move(start), std::nullopt, std::nullopt, constants};
}

ProblemInstance make_triangle_ls(const std::array<double, 3>& y, DomainSpec domain) {
  const auto x = triangle_atoms();
  AtomSet atoms = domain.kind == DomainSpec::Kind::Hull ? AtomSet::finite({x[0], x[1], x[2]})
                                                        : AtomSet::ball(Point::Zero(2), domain.radius);
  ProblemInstance inst = make_least_squares("triangle", {x[0], x[1], x[2]}, {y[0], y[1], y[2]}, std::move(atoms));
  inst.params["y1"] = std::to_string(y[0]);
  inst.params["y2"] = std::to_string(y[1]);
  inst.params["y3"] = std::to_string(y[2]);
  if (domain.kind == DomainSpec::Kind::Ball) inst.params["r"] = std::to_string(domain.radius);

  // sum x_i x_i^T = (3/2) I, so f(w) = ||w - u||^2 / 2 + const with
  // u = (2/3) sum y_i x_i and the constrained optimum is the projection of u.
  const Point u = (2.0 / 3.0) * (y[0] * x[0] + y[1] * x[1] + y[2] * x[2]);
  Point w_star = inst.atoms.is_ball() ? project_ball(u, inst.atoms.as_ball()) : project_triangle(u, x);
  inst.f_star = inst.fsum->value(w_star);
  inst.w_star = std::move(w_star);
  return inst;
}

ProblemInstance make_two_point_ls() {
  const Point x = make_point({1.0, 1.0});
  ProblemInstance inst = make_least_squares("asfw-two-point", {x, x}, {1.0, -1.0}, AtomSet::ball(Point::Zero(2), 0.5));
  inst.w_star = Point::Zero(2);
  inst.f_star = 1.0;
  return inst;
}

ProblemInstance make_random_finite_sum(std::size_t n, std::size_t dim, DomainSpec domain, Rng& rng) {
  if (n < 1 || dim < 1) throw Error(ErrorCode::InvalidInput, "random finite sum needs n >= 1 and dim >= 1");
  auto normal_point = [&] {
    Point p(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.normal();
    return p;
  };
  std::vector<Point> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(normal_point());
    ys.push_back(rng.normal());
  }
  AtomSet atoms = [&] {
    if (domain.kind == DomainSpec::Kind::Ball) return AtomSet::ball(Point::Zero(static_cast<Eigen::Index>(dim)), domain.radius);
    const std::size_t m = domain.hull_atoms == 0 ? dim + 1 : domain.hull_atoms;
    std::vector<Point> a;
    for (std::size_t i = 0; i < m; ++i) a.push_back(normal_point());
    return AtomSet::finite(std::move(a));
  }();
  ProblemInstance inst = make_least_squares("random", std::move(xs), std::move(ys), std::move(atoms));
  inst.params["n"] = std::to_string(n);
  inst.params["dim"] = std::to_string(dim);
  auto [w, f] = reference_optimum(inst);
  inst.w_star = std::move(w);
  inst.f_star = f;
  return inst;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).max(0.0).matrix();
}

std::pair<Point, double> reference_optimum(const ProblemInstance& instance, long max_iterations) {
  const auto& f = *instance.fsum;
  const double tol = 1e-10;
  std::optional<Point> result;

  if (instance.atoms.is_ball()) {
    const auto& b = instance.atoms.as_ball();
    const Eigen::MatrixXd A = second_moment(instance.xs);
    Point rhs = Point::Zero(A.rows());
    for (std::size_t i = 0; i < instance.xs.size(); ++i) rhs += instance.ys[i] * instance.xs[i];
    rhs /= static_cast<double>(instance.xs.size());
    const Point shift = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(A).solve(rhs - A * b.center);
    const Point candidate = project_ball(b.center + shift, b);

    SmoothProblem prob{[&](const Eigen::VectorXd& w) { return f.value(w); },
                       [&](const Eigen::VectorXd& w) { return f.gradient(w); },
                       [&](const Eigen::VectorXd& w) { return project_ball(w, b); },
                       instance.constants.smoothness};
    result = projected_gradient(prob, candidate, tol, max_iterations);
  } else {
    const auto& atoms = instance.atoms.atoms();
    const auto m = static_cast<Eigen::Index>(atoms.size());
    Eigen::MatrixXd X(static_cast<Eigen::Index>(instance.atoms.dim()), m);
    for (Eigen::Index j = 0; j < m; ++j) X.col(j) = atoms[static_cast<std::size_t>(j)];
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X.transpose() * X, Eigen::EigenvaluesOnly);
    SmoothProblem prob{[&](const Eigen::VectorXd& a) { return f.value(X * a); },
                       [&](const Eigen::VectorXd& a) { return Eigen::VectorXd(X.transpose() * f.gradient(X * a)); },
                       [](const Eigen::VectorXd& a) { return project_simplex(a); },
                       instance.constants.smoothness * std::max(eig.eigenvalues().maxCoeff(), 0.0)};
    auto alpha = projected_gradient(prob, Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)), tol, max_iterations);
    if (alpha) result = Point(X * *alpha);
  }

  if (!result) {
    throw Error(ErrorCode::OracleFailure, "reference optimum for '" + instance.name + "' did not converge in " +
                                              std::to_string(max_iterations) + " iterations");
  }
  const double gap = duality_gap(f, *result, instance.atoms);
  if (gap > 1e-8) {
    throw Error(ErrorCode::OracleFailure, "reference optimum for '" + instance.name + "' has duality gap " + std::to_string(gap));
  }
  const double value = f.value(*result);
  return {std::move(*result), value};
}

ProblemInstance make_problem(const std::string& id) {
  std::string name = id, body;
  if (const auto open = id.find('('); open != std::string::npos) {
    if (id.back() != ')') throw Error(ErrorCode::InvalidInput, "problem '" + id + "': missing ')'");
    name = id.substr(0, open);
    body = id.substr(open + 1, id.size() - open - 2);
  }
  const auto p = parse_params(body, id);

  ProblemInstance inst = [&] {
    if (name == "asj-triangle") {
      reject_unknown(p, {}, id);
      return make_triangle_ls({1.0, 1.0, 1.0}, DomainSpec::hull());
    }
    if (name == "asfw-two-point") {
      reject_unknown(p, {}, id);
      return make_two_point_ls();
    }
    if (name == "asfw-triangle-biased") {
      reject_unknown(p, {"r"}, id);
      const double r = param_double(p, "r", 0.5, id);
      if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidInput, "problem '" + id + "': r must lie in (0, 1)");
      return make_triangle_ls({1.0, -1.0, -1.0}, DomainSpec::ball(r));
    }
    if (name == "triangle") {
      reject_unknown(p, {"y1", "y2", "y3", "r"}, id);
      const std::array<double, 3> y{param_double(p, "y1", 1.0, id), param_double(p, "y2", 1.0, id), param_double(p, "y3", 1.0, id)};
      if (p.count("r")) {
        const double r = param_double(p, "r", 1.0, id);
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidInput, "problem '" + id + "': r must be > 0");
        return make_triangle_ls(y, DomainSpec::ball(r));
      }
      return make_triangle_ls(y, DomainSpec::hull());
    }
    if (name == "random") {
      reject_unknown(p, {"n", "dim", "seed", "domain", "atoms", "r"}, id);
      const long n = param_long(p, "n", 5, id);
      const long dim = param_long(p, "dim", 2, id);
      const long seed = param_long(p, "seed", 0, id);
      const long atoms = param_long(p, "atoms", 0, id);
      if (n < 1 || dim < 1 || atoms < 0) throw Error(ErrorCode::InvalidInput, "problem '" + id + "': n, dim must be >= 1");
      const std::string domain = p.count("domain") ? p.at("domain") : "hull";
      DomainSpec spec;
      if (domain == "hull") {
        spec = DomainSpec::hull(static_cast<std::size_t>(atoms));
      } else if (domain == "ball") {
        const double r = param_double(p, "r", 1.0, id);
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidInput, "problem '" + id + "': r must be > 0");
        spec = DomainSpec::ball(r);
      } else {
        throw Error(ErrorCode::InvalidInput, "problem '" + id + "': domain must be hull or ball");
      }
      Rng rng(static_cast<std::uint64_t>(seed), 7);
      return make_random_finite_sum(static_cast<std::size_t>(n), static_cast<std::size_t>(dim), spec, rng);
    }
    throw Error(ErrorCode::InvalidInput, "unknown problem '" + id + "'");
  }();
  inst.name = id;
  return inst;
}

std::vector<ProblemInfo> list_problems() {
  return {
      {"asj-triangle", "three unit atoms at 120 degrees, y = (1,1,1), hull domain; f* = 1 at the origin"},
      {"asfw-two-point", "x = (1,1) twice, y = (1,-1), ball r = 1/2; f* = 1 at the origin"},
      {"asfw-triangle-biased(r=0.5)", "triangle design, y = (1,-1,-1), ball of radius r < 1; w* = (0, r)"},
      {"triangle(y1=1,y2=1,y3=1[,r=..])", "triangle design with arbitrary targets; hull domain unless r is given"},
      {"random(n=5,dim=2,seed=0[,domain=hull|ball][,atoms=..][,r=1])", "standard-normal least squares with a numerical optimum"},
  };
}

}  // namespace greedyopt
