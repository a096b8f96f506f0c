#pragma once

#include <cmath>
#include <vector>

#include "greedyopt/core.hpp"
#include "greedyopt/rng.hpp"

namespace testsupport {

using greedyopt::Point;

inline Point random_point(greedyopt::Rng& rng, std::size_t dim, double scale = 1.0) {
  Point p(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = scale * rng.normal();
  return p;
}

inline std::vector<Point> triangle() {
  const double h = std::sqrt(3.0) / 2.0;
  return {greedyopt::make_point({0.0, 1.0}), greedyopt::make_point({-h, -0.5}), greedyopt::make_point({h, -0.5})};
}

// Central difference of f at w along every coordinate.
template <class F>
Point numeric_gradient(const F& f, const Point& w, double h = 1e-5) {
  Point g(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    Point a = w, b = w;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

}  // namespace testsupport
