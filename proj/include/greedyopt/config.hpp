#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greedyopt/core.hpp"
#include "greedyopt/trace.hpp"

namespace greedyopt {

/// A validated run description. Fields left empty in the file are resolved
/// to per-algorithm defaults by parse_config.
struct RunConfig {
  std::string problem;
  std::string algorithm;  // jones, fw, mixed, asj, asfw, arsfw
  long T = 0;
  std::uint64_t seed = 0;
  std::string output;
  OracleMode oracle_mode = OracleMode::Exact;
  long replicas = 1;

  std::string eta;         // standard, power, line, horizon, anytime, arsfw
  std::string eps;         // zero, c-linked, power, corollary, arsfw
  std::string batch;       // one, horizon, anytime, fixed
  std::string sigma;       // varying, fixed
  std::string inner_mode;  // exact_joint, fixed_eta
  double q = 0.5;          // eta = power
  double eps_power = 0.25; // eps = power
  double c = 0.0;
  double p = 0.5;
  double lambda = 1.0;
  long t_horizon = 0;      // 0 means T
  long b = 1;              // batch = fixed
  long mix_period = 2;

  long horizon() const { return t_horizon > 0 ? t_horizon : T; }
};

/// Parses flat `key = value` lines; `#` starts a comment. Unknown keys,
/// duplicates, malformed values and missing required keys throw ParseError
/// naming the line and key.
RunConfig parse_config(std::string_view text);

/// Reads and parses a config file; IoError names the path.
RunConfig load_config(const std::string& path);

/// `k,eta,eps,b,sigma,f_w,f_avg,gap,err,replica,seed`
const char* csv_header();

/// CSV rows (no header) for one replica; optional fields are left empty and
/// reals are printed with 17 significant digits.
std::string trace_csv_rows(const Trace& trace, long replica, std::uint64_t seed);

struct ReplicaSummary {
  long replica = 0;
  std::uint64_t seed = 0;
  double f = 0.0;
  double gap = 0.0;
  std::optional<double> err;
  bool assertions_ok = true;
  std::string failed_assertion;
};

struct ExecuteReport {
  std::vector<ReplicaSummary> replicas;
  bool ok() const;
};

using LineSink = std::function<void(const std::string&)>;

struct ProblemInstance;

/// One replica of the configured run with the given seed.
Trace run_config_replica(const RunConfig& config, const ProblemInstance& instance, std::uint64_t seed);

/// Runs config.replicas seeded runs (seed, seed + 1, ...), writes the CSV to
/// config.output and sends one summary line per replica plus a mean/stddev
/// line to `summary`.
ExecuteReport execute(const RunConfig& config, const LineSink& summary);

}  // namespace greedyopt
