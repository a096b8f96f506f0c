#include "greedyopt/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "greedyopt/errors.hpp"

namespace greedyopt {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem", "algorithm", "T",      "seed",   "output", "oracle_mode", "replicas",  "eta",      "eps",
      "batch",   "sigma",     "inner_mode", "q",  "eps_power", "c",        "p",         "lambda",   "t_horizon",
      "b",       "mix_period",
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& message) {
  std::string where = line > 0 ? "line " + std::to_string(line) : "config";
  throw Error(ErrorCode::ParseError, where + ": key '" + key + "': " + message);
}

class Fields {
 public:
  explicit Fields(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }

  std::string required(const std::string& key) const {
    if (!has(key)) fail(0, key, "missing required key");
    return entries_.at(key).value;
  }

  long integer(const std::string& key, long fallback, long min) const {
    if (!has(key)) return fallback;
    const Entry& e = entries_.at(key);
    try {
      std::size_t pos = 0;
      const long v = std::stol(e.value, &pos);
      if (pos == e.value.size()) {
        if (v < min) fail(e.line, key, "must be >= " + std::to_string(min));
        return v;
      }
    } catch (const std::logic_error&) {
    }
    fail(e.line, key, "expected an integer, got '" + e.value + "'");
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const Entry& e = entries_.at(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos == e.value.size() && std::isfinite(v)) return v;
    } catch (const std::logic_error&) {
    }
    fail(e.line, key, "expected a finite number, got '" + e.value + "'");
  }

  std::uint64_t seed(const std::string& key) const {
    const Entry& e = entries_.at(key);
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(e.value, &pos);
      if (pos == e.value.size() && e.value.find('-') == std::string::npos) return v;
    } catch (const std::logic_error&) {
    }
    fail(e.line, key, "expected an unsigned 64-bit integer, got '" + e.value + "'");
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed,
                     const std::string& context) const {
    const std::string v = text(key, fallback);
    if (allowed.count(v) == 0) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(line(key), key, "'" + v + "' is not valid" + context + " (expected one of: " + list + ")");
    }
    return v;
  }

  void forbid(const std::string& key, const std::string& algorithm) const {
    if (has(key)) fail(line(key), key, "not used by algorithm '" + algorithm + "'");
  }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, line, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail(line_no, key, "empty key");
    if (known_keys().count(key) == 0) fail(line_no, key, "unknown key");
    if (value.empty()) fail(line_no, key, "empty value");
    if (entries.count(key) != 0) fail(line_no, key, "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
    entries[key] = {value, line_no};
  }

  const Fields f(std::move(entries));
  RunConfig cfg;
  cfg.problem = f.required("problem");
  cfg.algorithm = f.required("algorithm");
  f.required("T");
  f.required("seed");
  cfg.output = f.required("output");
  const std::string& alg = cfg.algorithm;
  if (!std::set<std::string>{"jones", "fw", "mixed", "asj", "asfw", "arsfw"}.count(alg)) {
    fail(f.line("algorithm"), "algorithm", "'" + alg + "' is not valid (expected one of: jones, fw, mixed, asj, asfw, arsfw)");
  }
  cfg.T = f.integer("T", 0, 1);
  cfg.seed = f.seed("seed");
  cfg.replicas = f.integer("replicas", 1, 1);
  const std::string mode = f.choice("oracle_mode", "exact", {"exact", "adversarial", "seeded-random"}, "");
  cfg.oracle_mode = oracle_mode_from_string(mode);

  cfg.q = f.real("q", 0.5);
  if (!(cfg.q > 0.0)) fail(f.line("q"), "q", "must be > 0");
  cfg.eps_power = f.real("eps_power", 0.25);
  if (!(cfg.eps_power > 0.0)) fail(f.line("eps_power"), "eps_power", "must be > 0");
  cfg.c = f.real("c", alg == "arsfw" ? 1.0 : 0.0);
  if (!(cfg.c >= 0.0)) fail(f.line("c"), "c", "must be >= 0");
  cfg.t_horizon = f.integer("t_horizon", 0, 1);
  cfg.b = f.integer("b", 1, 1);
  cfg.mix_period = f.integer("mix_period", 2, 1);
  cfg.p = f.real("p", 0.5);
  cfg.lambda = f.real("lambda", 1.0);

  const std::string ctx = " for algorithm '" + alg + "'";
  if (alg == "jones" || alg == "fw" || alg == "mixed") {
    for (const char* k : {"batch", "sigma", "inner_mode", "p", "lambda", "b", "t_horizon"}) f.forbid(k, alg);
    if (alg != "mixed") f.forbid("mix_period", alg);
    cfg.eta = alg == "jones" ? f.choice("eta", "standard", {"standard", "power", "line"}, ctx)
                             : f.choice("eta", "standard", {"standard", "power"}, ctx);
    if (cfg.eta == "line") {
      cfg.eps = f.choice("eps", "zero", {"zero", "corollary"}, " with eta = line");
    } else {
      cfg.eps = f.choice("eps", "zero", {"zero", "c-linked", "power"}, ctx);
    }
  } else if (alg == "asj" || alg == "asfw") {
    for (const char* k : {"sigma", "p", "lambda", "mix_period"}) f.forbid(k, alg);
    cfg.batch = f.choice("batch", "one", {"one", "horizon", "anytime", "fixed"}, ctx);
    if (cfg.batch != "fixed") f.forbid("b", alg + "' with batch '" + cfg.batch);
    const std::string eta_default = cfg.batch == "horizon" ? "horizon" : cfg.batch == "anytime" ? "anytime" : "standard";
    cfg.eta = f.choice("eta", eta_default, {"standard", "power", "horizon", "anytime"}, ctx);
    cfg.eps = f.choice("eps", "zero", {"zero", "c-linked", "power"}, ctx);
    if (alg == "asj") {
      cfg.inner_mode = f.choice("inner_mode", "exact_joint", {"exact_joint", "fixed_eta"}, ctx);
      if (cfg.inner_mode == "exact_joint" && cfg.eps != "zero") {
        fail(f.line("eps"), "eps", "exact_joint steps take no oracle error; use inner_mode = fixed_eta");
      }
    } else {
      f.forbid("inner_mode", alg);
    }
  } else {
    for (const char* k : {"inner_mode", "mix_period", "b", "q", "eps_power"}) f.forbid(k, alg);
    cfg.eta = f.choice("eta", "arsfw", {"arsfw"}, ctx);
    cfg.eps = f.choice("eps", "arsfw", {"arsfw"}, ctx);
    cfg.batch = f.choice("batch", "one", {"one"}, ctx);
    cfg.sigma = f.choice("sigma", "varying", {"varying", "fixed"}, ctx);
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) fail(f.line("p"), "p", "must lie in [0, 1]");
    if (!(cfg.lambda >= 1.0)) fail(f.line("lambda"), "lambda", "must be >= 1");
    if (!(cfg.c > 0.0)) fail(f.line("c"), "c", "must be > 0 for arsfw");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "error reading config file '" + path + "'");
  return parse_config(ss.str());
}

}  // namespace greedyopt
