#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace greedyopt::checks {

/// One assertion of a check: a label, its outcome and the measured vs. bound
/// values as text.
struct CheckLine {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CheckResult {
  std::string name;
  std::vector<CheckLine> lines;

  bool pass() const;
};

/// Overrides by parameter name. Unknown names are rejected with InvalidParams.
using CheckParams = std::map<std::string, std::string>;

/// Called with progress text while a check runs; may be empty.
using ProgressSink = std::function<void(const std::string&)>;

/// Names accepted by run_check: rate, optimal, equiv, asj, asfw-a, asfw-b,
/// arsfw, converge.
std::vector<std::string> check_names();

/// Parameter names and defaults of a check.
CheckParams check_defaults(const std::string& name);

CheckResult run_check(const std::string& name, const CheckParams& params = {}, const ProgressSink& progress = {});

/// "PASS label: detail" or "FAIL label: detail".
std::string format_line(const std::string& check, const CheckLine& line);

}  // namespace greedyopt::checks
