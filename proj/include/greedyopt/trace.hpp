#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greedyopt/core.hpp"

namespace greedyopt {

/// One row per iterate. `eta`/`eps` are the values used for the step taken
/// from this iterate; `f_avg` is f at the schedule-weighted average iterate.
struct TraceRecord {
  long k = 0;
  std::optional<double> eta;
  double eps = 0.0;
  std::optional<double> batch;
  std::optional<double> sigma;
  double f_w = 0.0;
  std::optional<double> f_avg;
  double gap = 0.0;
  std::optional<double> err;
};

struct TraceMeta {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string eta_id;
  std::string eps_id;
  std::string batch_id;
  std::string sigma_id;
  int index_base = 0;  // 0 for the deterministic runner, 1 for stochastic runners
};

struct Trace {
  TraceMeta meta;
  std::vector<TraceRecord> records;
  std::vector<Point> iterates;             // filled when requested
  std::vector<Eigen::VectorXd> weights;    // convex weights over finite atoms, when tracked
  Point final_w;                           // iterate after the last step
  std::optional<Point> final_avg;          // averaged iterate, stochastic runners

  const TraceRecord& back() const { return records.back(); }
};

}  // namespace greedyopt
