#include <cmath>
#include <functional>
#include <optional>

#include "doctest.h"
#include "greedyopt/errors.hpp"
#include "greedyopt/problems.hpp"
#include "support.hpp"

using namespace greedyopt;
using testsupport::triangle;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("triangle instances") {
  const auto t = make_problem("asj-triangle");
  const auto atoms = triangle_atoms();
  for (std::size_t i = 0; i < 3; ++i) CHECK((atoms[i] - triangle()[i]).norm() <= 1e-15);
  CHECK(*t.f_star == doctest::Approx(1.0));
  CHECK(t.w_star->norm() <= 1e-12);
  CHECK(t.fsum->value(atoms[0]) == doctest::Approx(1.5));
  CHECK(t.constants.curvature == doctest::Approx(3.0));
  CHECK(t.constants.diameter == doctest::Approx(std::sqrt(3.0)));
  CHECK(t.constants.component_curvature == doctest::Approx(6.0));
  CHECK(t.start == atoms[0]);

  const auto b = make_problem("asfw-triangle-biased(r=0.5)");
  CHECK(b.atoms.is_ball());
  CHECK((*b.w_star - make_point({0.0, 0.5})).norm() <= 1e-9);
  CHECK(*b.f_star == doctest::Approx(b.fsum->value(make_point({0.0, 0.5}))));
  CHECK(b.fsum->value(make_point({0.0, 1.0 / 3.0})) - *b.f_star == doctest::Approx(0.153).epsilon(0.01));
}

TEST_CASE("two-point instance") {
  const auto p = make_problem("asfw-two-point");
  CHECK(p.fsum->size() == 2);
  CHECK(p.atoms.as_ball().radius == 0.5);
  CHECK(*p.f_star == doctest::Approx(1.0));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Point w = sample_feasible(p.atoms, rng);
    const double s = w[0] + w[1];
    CHECK(p.fsum->value(w) == doctest::Approx(s * s + 1.0).epsilon(1e-12));
  }
  CHECK(p.constants.lipschitz == doctest::Approx(2.0 * (std::sqrt(2.0) * 0.5 + 1.0) * std::sqrt(2.0)));
}

TEST_CASE("reference optimum examples") {
  const auto one = make_least_squares("one", {make_point({1.0})}, {5.0}, AtomSet::ball(make_point({0.0}), 1.0));
  const auto [w, f] = reference_optimum(one);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f == doctest::Approx(16.0).epsilon(1e-10));

  // Unconstrained minimizer inside the hull.
  const auto in = make_least_squares("in", {make_point({1.0, 0.0}), make_point({0.0, 1.0})}, {0.1, 0.2},
                                     AtomSet::finite({make_point({-1.0, -1.0}), make_point({2.0, -1.0}), make_point({-1.0, 2.0})}));
  const auto [wi, fi] = reference_optimum(in);
  CHECK((wi - make_point({0.1, 0.2})).norm() <= 1e-8);
  CHECK(fi <= 1e-14);
}

TEST_CASE("random instances: optimum dominates samples and closes the gap") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const bool ball = trial % 2 == 0;
    const std::size_t dim = 1 + static_cast<std::size_t>(trial % 4);
    const auto inst = make_random_finite_sum(2 + static_cast<std::size_t>(trial % 4), dim,
                                             ball ? DomainSpec::ball(0.7) : DomainSpec::hull(), rng);
    REQUIRE(inst.w_star.has_value());
    CHECK(duality_gap(*inst.fsum, *inst.w_star, inst.atoms) <= 1e-8);
    CHECK(*inst.f_star == doctest::Approx(inst.fsum->value(*inst.w_star)));
    Rng s(trial);
    for (int i = 0; i < 10000 / 12; ++i) {
      const Point w = sample_feasible(inst.atoms, s);
      CHECK(*inst.f_star <= inst.fsum->value(w) + 1e-10);
    }
  }
}

TEST_CASE("ball optimum agrees with a dense search in one dimension") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = make_random_finite_sum(3, 1, DomainSpec::ball(0.5), rng);
    double best = 1e300;
    for (int i = 0; i <= 100000; ++i) best = std::min(best, inst.fsum->value(make_point({-0.5 + i * 1e-5})));
    CHECK(*inst.f_star <= best + 1e-12);
    CHECK(*inst.f_star >= best - 1e-8);
  }
}

TEST_CASE("simplex projection") {
  const Eigen::VectorXd p = project_simplex(Eigen::Vector3d(0.5, 0.2, 0.3));
  CHECK((p - Eigen::Vector3d(0.5, 0.2, 0.3)).norm() <= 1e-15);
  const Eigen::VectorXd q = project_simplex(Eigen::Vector3d(2.0, 0.0, -1.0));
  CHECK((q - Eigen::Vector3d(1.0, 0.0, 0.0)).norm() <= 1e-15);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd v = testsupport::random_point(rng, 5, 2.0);
    const Eigen::VectorXd s = project_simplex(v);
    CHECK(s.minCoeff() >= 0.0);
    CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("problem ids") {
  const auto r1 = make_problem("random(n=4,dim=3,seed=7)");
  const auto r2 = make_problem("random(n=4,dim=3,seed=7)");
  CHECK(r1.fsum->size() == 4);
  CHECK(r1.atoms.dim() == 3);
  CHECK(r1.atoms.size() == 4);
  CHECK(*r1.f_star == *r2.f_star);
  CHECK(make_problem("random(n=2,dim=2,domain=ball,r=2)").atoms.as_ball().radius == 2.0);
  CHECK(make_problem("triangle(y1=1,y2=-1,y3=-1,r=0.5)").atoms.is_ball());
  CHECK(make_problem("triangle(y1=0.2)").fsum->size() == 3);
  CHECK(make_problem("asj-triangle").name == "asj-triangle");

  for (const char* bad : {"nope", "random(n=0)", "random(n=x)", "triangle(y4=1)", "asfw-triangle-biased(r=1)",
                          "triangle(y1=1", "random(domain=cube)", "asj-triangle(r=1)"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { make_problem(bad); }) == ErrorCode::InvalidInput);
  }
  CHECK(list_problems().size() >= 5);
}
