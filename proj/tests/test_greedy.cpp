#include <cmath>
#include <functional>
#include <memory>
#include <optional>

#include "doctest.h"
#include "greedyopt/errors.hpp"
#include "greedyopt/greedy.hpp"
#include "greedyopt/problems.hpp"
#include "support.hpp"

using namespace greedyopt;
using testsupport::random_point;
using testsupport::triangle;

namespace {

// (1/3) sum (x_i^T w - 1)^2 written out independently of the library.
double triangle_f(const Point& w) {
  double s = 0.0;
  for (const auto& x : triangle()) s += (x.dot(w) - 1.0) * (x.dot(w) - 1.0);
  return s / 3.0;
}

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("jones step on the triangle") {
  const auto inst = make_problem("asj-triangle");
  const Point x1 = triangle()[0];
  for (const auto& a : triangle()) {
    const double v = triangle_f(0.5 * x1 + 0.5 * a);
    CHECK((v == doctest::Approx(1.5) || v == doctest::Approx(1.125)));
  }
  const StepResult s = jones_step(*inst.fsum, inst.atoms, x1, 0.5, 0.0, OracleMode::Exact, nullptr);
  CHECK(s.index.value() == 1);
  CHECK(inst.fsum->value(s.w_next) == doctest::Approx(1.125));
  CHECK(triangle_f(s.w_next) == doctest::Approx(1.125));

  const StepResult z = jones_step(*inst.fsum, inst.atoms, x1, 0.0, 0.0, OracleMode::Exact, nullptr);
  CHECK(z.w_next == x1);

  // All atoms admissible: the adversary takes the worst one.
  const StepResult adv = jones_step(*inst.fsum, inst.atoms, x1, 0.5, 10.0, OracleMode::Adversarial, nullptr);
  CHECK(adv.index.value() == 0);
  CHECK(inst.fsum->value(adv.w_next) - 1.125 <= 10.0 * 0.5);
}

TEST_CASE("jones steps reject ball domains") {
  const auto inst = make_problem("asfw-two-point");
  const Point w = make_point({0.0, 0.0});
  CHECK(code_of([&] { jones_step(*inst.fsum, inst.atoms, w, 0.5, 0.0, OracleMode::Exact, nullptr); }) ==
        ErrorCode::UnsupportedDomain);
  CHECK(code_of([&] { jones_step_joint(*inst.fsum, inst.atoms, w, 0.0, OracleMode::Exact, nullptr); }) ==
        ErrorCode::UnsupportedDomain);
}

TEST_CASE("joint jones step matches a grid search") {
  const auto inst = make_problem("asj-triangle");
  const Point x1 = triangle()[0];
  const StepResult s = jones_step_joint(*inst.fsum, inst.atoms, x1, 0.0, OracleMode::Exact, nullptr);
  CHECK((s.index.value() == 1 || s.index.value() == 2));
  const double v = inst.fsum->value(s.w_next);
  CHECK(v <= 1.125);

  double best = 1e300;
  for (const auto& a : triangle()) {
    for (int i = 0; i <= 1000000; ++i) {
      const double eta = i * 1e-6;
      best = std::min(best, triangle_f((1.0 - eta) * x1 + eta * a));
    }
  }
  CHECK(v == doctest::Approx(best).epsilon(1e-8));

  // Already optimal: no movement.
  const StepResult still = jones_step_joint(*inst.fsum, inst.atoms, make_point({0.0, 0.0}), 0.0, OracleMode::Exact, nullptr);
  CHECK(still.eta <= 1e-8);
  CHECK(still.w_next.norm() <= 1e-8);

  // Single atom: eta minimizes f along the segment. f(w) = ||w - (2,0)||^2 from the origin towards (1,0).
  std::vector<std::shared_ptr<const Objective>> comps = {
      std::make_shared<LeastSquaresComponent>(make_point({1.0, 0.0}), 2.0),
      std::make_shared<LeastSquaresComponent>(make_point({0.0, 1.0}), 0.0)};
  const FiniteSumObjective f(comps);
  const AtomSet one = AtomSet::finite({make_point({4.0, 0.0})});
  const StepResult seg = jones_step_joint(f, one, make_point({0.0, 0.0}), 0.0, OracleMode::Exact, nullptr);
  CHECK(seg.eta == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("frank-wolfe steps") {
  const auto inst = make_problem("asj-triangle");
  const Point x1 = triangle()[0];
  CHECK((inst.fsum->gradient(x1) - make_point({0.0, 1.0})).norm() <= 1e-15);
  const StepResult s = fw_step(*inst.fsum, inst.atoms, x1, 0.3, 0.0, OracleMode::Exact, nullptr);
  CHECK(s.d == triangle()[1]);
  CHECK(fw_step(*inst.fsum, inst.atoms, x1, 0.0, 0.0, OracleMode::Exact, nullptr).w_next == x1);

  // Two-point instance: each component points to r sign(y_i) x / ||x||.
  const auto two = make_problem("asfw-two-point");
  Rng rng(2);
  const Point xhat = make_point({1.0, 1.0}) / std::sqrt(2.0);
  for (int t = 0; t < 100; ++t) {
    const Point w = sample_feasible(two.atoms, rng);
    for (std::size_t i = 0; i < 2; ++i) {
      const double y = two.ys[i];
      const StepResult c = fw_step(two.fsum->component(i), two.atoms, w, 0.5, 0.0, OracleMode::Exact, nullptr);
      CHECK((c.d - 0.5 * (y > 0 ? 1.0 : -1.0) * xhat).norm() <= 1e-15);
    }
  }
}

TEST_CASE("slack helpers") {
  const auto inst = make_problem("triangle(y1=0.3,y2=-1,y3=2)");
  const Point w = make_point({0.1, 0.2});
  const Point g = inst.fsum->gradient(w);
  CHECK(fw_slack_of_jones(*inst.fsum, inst.atoms, w, lmo(inst.atoms, g).d) == 0.0);
  const StepResult j = jones_step(*inst.fsum, inst.atoms, w, 0.4, 0.0, OracleMode::Exact, nullptr);
  CHECK(jones_slack_of_fw(*inst.fsum, inst.atoms, w, j.d, 0.4) == 0.0);
  CHECK(jones_slack_of_fw(*inst.fsum, inst.atoms, w, triangle()[0], 0.0) == 0.0);
}

TEST_CASE("equivalence slacks after exact and approximate steps") {
  Rng rng(17);
  Rng oracle(17, 1);
  for (int p = 0; p < 20; ++p) {
    std::vector<Point> xs, atoms;
    std::vector<double> ys;
    for (int i = 0; i < 4; ++i) {
      xs.push_back(random_point(rng, 3));
      ys.push_back(rng.normal());
    }
    for (int i = 0; i < 5; ++i) atoms.push_back(random_point(rng, 3));
    const auto inst = make_least_squares("r", xs, ys, AtomSet::finite(atoms));
    const double M = inst.constants.curvature;
    Point w = inst.start;
    for (int k = 0; k < 50; ++k) {
      const double eta = 2.0 / (k + 2.0);
      const double eps = 0.5 * eta;
      const StepResult j = jones_step(*inst.fsum, inst.atoms, w, eta, eps, OracleMode::Adversarial, &oracle);
      CHECK(fw_slack_of_jones(*inst.fsum, inst.atoms, w, j.d) <= eps + 0.5 * M * eta + 1e-9);
      const StepResult f = fw_step(*inst.fsum, inst.atoms, w, eta, eps, OracleMode::Adversarial, &oracle);
      CHECK(jones_slack_of_fw(*inst.fsum, inst.atoms, w, f.d, eta) <= eps + 0.5 * M * eta + 1e-9);
      w = k % 2 == 0 ? j.w_next : f.w_next;
    }
  }
}

TEST_CASE("deterministic runs") {
  const auto inst = make_problem("asj-triangle");
  const double M = inst.constants.curvature;
  CHECK(M == doctest::Approx(3.0));

  DeterministicOptions o;
  o.T = 2000;
  o.f_star = 1.0;
  o.record_weights = true;
  const Trace jt = run_deterministic(*inst.fsum, inst.atoms, inst.start, {rules::standard_eta(), rules::zero()},
                                     Algorithm::jones(), o);
  CHECK(jt.records.size() == 2001);
  CHECK(jt.meta.index_base == 0);
  for (long k = 1; k <= 2000; ++k) CHECK(*jt.records[static_cast<std::size_t>(k)].err <= 2.0 * M / (k + 2.0) + 1e-9);
  for (const auto& wts : jt.weights) {
    CHECK(wts.minCoeff() >= 0.0);
    CHECK(std::abs(wts.sum() - 1.0) <= 1e-12);
  }
  Point rebuilt = Point::Zero(2);
  for (std::size_t i = 0; i < 3; ++i) rebuilt += jt.weights.back()[static_cast<Eigen::Index>(i)] * triangle()[i];
  CHECK((rebuilt - jt.final_w).norm() <= 1e-12);

  SUBCASE("mixed steps keep the rate") {
    o.mode = OracleMode::Adversarial;
    const Trace mt = run_deterministic(*inst.fsum, inst.atoms, inst.start,
                                       {rules::standard_eta(), rules::scaled(1.0, rules::standard_eta())},
                                       Algorithm::mixed(2), o);
    for (long k = 1; k <= 2000; ++k) {
      CHECK(*mt.records[static_cast<std::size_t>(k)].err <= (2.0 * M + 4.0) / (k + 2.0) + 1e-9);
    }
  }
  SUBCASE("joint steps record the chosen eta") {
    o.record_weights = false;
    o.T = 20;
    const Trace t = run_deterministic(*inst.fsum, inst.atoms, inst.start, {rules::standard_eta(), rules::zero()},
                                      Algorithm::jones_joint(), o);
    for (std::size_t k = 0; k + 1 < t.records.size(); ++k) CHECK(t.records[k].eta.has_value());
    CHECK(*t.back().err <= 1e-12);
  }
  SUBCASE("bad schedules are rejected") {
    CHECK(code_of([&] {
            run_deterministic(*inst.fsum, inst.atoms, inst.start, {rules::constant(1.5), rules::zero()},
                              Algorithm::frank_wolfe(), o);
          }) == ErrorCode::InvalidSchedule);
  }
}

TEST_CASE("recurrence holds pointwise along runs") {
  const auto inst = make_problem("asj-triangle");
  const double M = inst.constants.curvature;
  for (Algorithm alg : {Algorithm::jones(), Algorithm::frank_wolfe()}) {
    DeterministicOptions o;
    o.T = 500;
    o.f_star = 1.0;
    o.mode = OracleMode::Adversarial;
    const Trace t = run_deterministic(*inst.fsum, inst.atoms, inst.start,
                                      {rules::standard_eta(), rules::scaled(0.5, rules::standard_eta())}, alg, o);
    for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
      const auto& r = t.records[k];
      CHECK(*t.records[k + 1].err <= (1.0 - *r.eta) * *r.err + *r.eta * r.eps + 0.5 * M * *r.eta * *r.eta + 1e-9);
    }
  }
}
