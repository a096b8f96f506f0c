// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// values behind it. Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "greedyopt/checks.hpp"
#include "greedyopt/core.hpp"
#include "greedyopt/problems.hpp"

using namespace greedyopt;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::string check;
  std::vector<std::string> labels;  // empty: every line of the check
};

std::map<std::string, checks::CheckResult> cache;

const checks::CheckResult& result_of(const std::string& name) {
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, checks::run_check(name)).first;
  return it->second;
}

// Seeded property sweeps over the core primitives; returns failures and a
// short tally per property.
long invariant_sweep(std::vector<std::string>& notes) {
  Rng rng(2024);
  long failures = 0;
  long lmo_n = 0, slack_n = 0, breg_n = 0, dual_n = 0, grad_n = 0;

  auto rand_point = [&](std::size_t dim, double scale) {
    Point p(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = scale * rng.normal();
    return p;
  };

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng.uniform_index(4);
    std::vector<Point> atoms;
    const std::size_t m = 1 + rng.uniform_index(6);
    for (std::size_t i = 0; i < m; ++i) atoms.push_back(rand_point(dim, 1.0));
    const AtomSet finite = AtomSet::finite(atoms);
    const AtomSet ball = AtomSet::ball(rand_point(dim, 1.0), 0.1 + rng.uniform01());

    for (const AtomSet* S : {&finite, &ball}) {
      const Point g = rand_point(dim, 2.0);
      const LmoResult best = lmo(*S, g);
      // LMO optimality against the atoms or random sphere points.
      for (int j = 0; j < 20; ++j) {
        const Point a = sample_atom(*S, rng);
        ++lmo_n;
        if (g.dot(a) < best.value - 1e-12 * (1.0 + std::abs(best.value))) ++failures;
      }
      for (OracleMode mode : {OracleMode::Exact, OracleMode::Adversarial, OracleMode::SeededRandom}) {
        const double eps = rng.uniform01();
        const LmoResult r = approx_lmo(*S, g, eps, mode, &rng);
        ++slack_n;
        const double slack = r.value - best.value;
        if (slack < -1e-12 || slack > eps + 1e-12) ++failures;
      }
    }

    std::vector<Point> xs;
    std::vector<double> ys;
    const std::size_t n = 1 + rng.uniform_index(5);
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(rand_point(dim, 1.0));
      ys.push_back(rng.normal());
    }
    const ProblemInstance inst = make_least_squares("sweep", xs, ys, finite);
    const auto [w_star, f_star] = reference_optimum(inst);
    (void)w_star;
    std::vector<std::shared_ptr<const Objective>> objs = {inst.fsum, std::make_shared<SquaredNormObjective>(dim, 0.7),
                                                         std::make_shared<LinearObjective>(rand_point(dim, 1.0)),
                                                         std::make_shared<LeastSquaresComponent>(xs[0], ys[0])};
    for (int j = 0; j < 10; ++j) {
      const Point w = sample_feasible(finite, rng);
      const Point y = sample_feasible(finite, rng);
      ++breg_n;
      for (const auto& f : objs) {
        if (bregman(*f, w, y) < -1e-10) ++failures;
      }
      ++dual_n;
      const double err = inst.fsum->value(w) - f_star;
      if (err < -1e-9 || err > duality_gap(*inst.fsum, w, finite) + 1e-9) ++failures;

      for (const auto& f : objs) {
        ++grad_n;
        Point fd(static_cast<Eigen::Index>(dim));
        for (Eigen::Index i = 0; i < fd.size(); ++i) {
          Point a = w, b = w;
          a[i] += 1e-5;
          b[i] -= 1e-5;
          fd[i] = (f->value(a) - f->value(b)) / 2e-5;
        }
        if ((fd - f->gradient(w)).norm() > 1e-6 * (1.0 + fd.norm())) ++failures;
      }
    }
  }

  // Cubic-order curvature: halving eta doubles D_f / eta^3.
  long cubic_n = 0;
  const SquaredNormObjective q(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Point w = rand_point(3, 1.0), d = rand_point(3, 1.0);
    double prev = 0.0;
    for (int j = 1; j <= 12; ++j) {
      const double eta = std::ldexp(1.0, -j);
      const double v = bregman(q, (1.0 - eta) * w + eta * d, w) / (eta * eta * eta);
      if (j > 1) {
        ++cubic_n;
        if (std::abs(v / prev - 2.0) > 1e-6) ++failures;
      }
      prev = v;
    }
  }

  notes.push_back("lmo optimality " + std::to_string(lmo_n) + ", approx slack " + std::to_string(slack_n) +
                  ", bregman " + std::to_string(breg_n) + ", duality " + std::to_string(dual_n) + ", gradients " +
                  std::to_string(grad_n) + ", cubic doubling " + std::to_string(cubic_n) + " samples");
  return failures;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "rate bound", "rate", {"exact-jones", "exact-fw", "adversarial-jones", "adversarial-fw"}},
      {2, "per-step recurrence", "rate", {"recurrence"}},
      {3, "lower-bound optimality", "optimal", {}},
      {4, "equivalence", "equiv", {}},
      {5, "stochastic Jones divergence", "asj", {"divergence-vertices", "divergence-mean-err"}},
      {6, "stochastic Jones rate", "asj", {"rate-bound", "rate-slope"}},
      {7, "stochastic FW two-point example", "asfw-a", {}},
      {8, "stochastic FW biased limit", "asfw-b", {}},
      {9, "regularized stochastic FW", "arsfw", {}},
      {10, "sufficient convergence", "converge", {}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& res = result_of(c.check);
    std::vector<const checks::CheckLine*> lines;
    for (const auto& l : res.lines) {
      if (c.labels.empty() || std::find(c.labels.begin(), c.labels.end(), l.label) != c.labels.end()) lines.push_back(&l);
    }
    bool pass = !lines.empty();
    for (const auto* l : lines) pass = pass && l->pass;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
    for (const auto* l : lines) std::printf("    %s\n", checks::format_line(c.check, *l).c_str());
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }

  std::vector<std::string> notes;
  const long sweep_failures = invariant_sweep(notes);
  std::printf("%s criterion 11: core invariant sweep\n", sweep_failures == 0 ? "PASS" : "FAIL");
  std::printf("    %ld failures; %s\n", sweep_failures, notes.front().c_str());
  failed += sweep_failures == 0 ? 0 : 1;

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
