// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "greedyopt/greedyopt.h"

namespace {

void collect(const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->emplace_back(line); }

const char* kConfig = "problem = asj-triangle\nalgorithm = jones\nT = 50\nseed = 9\noutput = /dev/null\n";

}  // namespace

TEST_CASE("status names and last error") {
  CHECK(std::string(gopt_status_name(GOPT_OK)) == "ok");
  CHECK(std::string(gopt_status_name(GOPT_CHECK_FAILED)) == "check-failed");
  gopt_problem* p = nullptr;
  CHECK(gopt_problem_create("no-such-problem", &p) == GOPT_INVALID_INPUT);
  CHECK(p == nullptr);
  CHECK(std::string(gopt_last_error()).find("no-such-problem") != std::string::npos);
  REQUIRE(gopt_problem_create("asj-triangle", &p) == GOPT_OK);
  CHECK(std::string(gopt_last_error()).empty());
  gopt_problem_destroy(p);
  gopt_problem_destroy(nullptr);
}

TEST_CASE("atoms and oracles") {
  const double h = std::sqrt(3.0) / 2.0;
  const double coords[] = {0.0, 1.0, -h, -0.5, h, -0.5};
  gopt_atoms* a = nullptr;
  REQUIRE(gopt_atoms_finite(coords, 3, 2, &a) == GOPT_OK);
  CHECK(gopt_atoms_dim(a) == 2);
  const double g[] = {0.0, 1.0};
  double d[2], v = 0.0;
  REQUIRE(gopt_lmo(a, g, 2, d, &v) == GOPT_OK);
  CHECK(d[0] == doctest::Approx(-h));
  CHECK(v == doctest::Approx(-0.5));
  CHECK(gopt_lmo(a, g, 3, d, &v) == GOPT_INVALID_INPUT);
  REQUIRE(gopt_approx_lmo(a, g, 2, 2.0, "adversarial", 0, d, &v) == GOPT_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(gopt_approx_lmo(a, g, 2, 0.1, "sometimes", 0, d, &v) != GOPT_OK);
  gopt_atoms_destroy(a);

  const double c[] = {0.0, 0.0};
  gopt_atoms* b = nullptr;
  REQUIRE(gopt_atoms_ball(c, 2, 0.5, &b) == GOPT_OK);
  const double g2[] = {1.0, 1.0};
  REQUIRE(gopt_lmo(b, g2, 2, d, &v) == GOPT_OK);
  CHECK(d[0] == doctest::Approx(-0.5 / std::sqrt(2.0)));
  gopt_atoms_destroy(b);
  CHECK(gopt_atoms_ball(c, 2, -1.0, &b) == GOPT_INVALID_INPUT);
}

TEST_CASE("problems") {
  gopt_problem* p = nullptr;
  REQUIRE(gopt_problem_create("asfw-two-point", &p) == GOPT_OK);
  CHECK(gopt_problem_dim(p) == 2);
  CHECK(gopt_problem_size(p) == 2);
  const double w[] = {0.1, 0.2};
  double f = 0.0, g[2];
  REQUIRE(gopt_problem_value(p, w, 2, &f) == GOPT_OK);
  CHECK(f == doctest::Approx(0.09 + 1.0));
  REQUIRE(gopt_problem_gradient(p, w, 2, g) == GOPT_OK);
  CHECK(g[0] == doctest::Approx(0.6));
  gopt_constants k{};
  REQUIRE(gopt_problem_constants(p, &k) == GOPT_OK);
  CHECK(k.diameter == doctest::Approx(1.0));
  double ws[2], fs = 0.0;
  REQUIRE(gopt_problem_optimum(p, ws, 2, &fs) == GOPT_OK);
  CHECK(fs == doctest::Approx(1.0));
  double d[2], v = 0.0;
  CHECK(gopt_lmo(gopt_problem_atoms(p), g, 2, d, &v) == GOPT_OK);
  gopt_problem_destroy(p);

  std::vector<std::string> lines;
  REQUIRE(gopt_list_problems(collect, &lines) == GOPT_OK);
  CHECK(lines.size() >= 5);
  CHECK(lines[0].rfind("asj-triangle", 0) == 0);
}

TEST_CASE("recurrences") {
  double K = 0.0;
  REQUIRE(gopt_compute_K(1.0, 0.5, 1.0, 1.0, 1.0, 1.0, &K) == GOPT_OK);
  CHECK(K == doctest::Approx(std::pow(std::sqrt(2.0) + std::sqrt(6.0), 2.0)));
  CHECK(gopt_compute_K(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, &K) == GOPT_INVALID_PARAMS);
  int holds = 0;
  REQUIRE(gopt_verify_lower_bound(1.0, 1.0, 10000, &holds) == GOPT_OK);
  CHECK(holds == 1);
  CHECK(gopt_verify_lower_bound(3.0, 1.0, 10, &holds) == GOPT_PRECONDITION_VIOLATION);
}

TEST_CASE("configs and traces") {
  gopt_config* cfg = nullptr;
  CHECK(gopt_config_parse("problem = x\n", &cfg) == GOPT_PARSE_ERROR);
  CHECK(std::string(gopt_last_error()).find("missing required key") != std::string::npos);
  CHECK(gopt_config_load("/nonexistent/run.cfg", &cfg) == GOPT_IO_ERROR);
  REQUIRE(gopt_config_parse(kConfig, &cfg) == GOPT_OK);
  CHECK(gopt_config_replicas(cfg) == 1);

  gopt_trace* t = nullptr;
  REQUIRE(gopt_run_replica(cfg, 0, &t) == GOPT_OK);
  CHECK(gopt_trace_length(t) == 51);
  gopt_record r{};
  REQUIRE(gopt_trace_record(t, 0, &r) == GOPT_OK);
  CHECK(r.k == 0);
  CHECK(r.has_eta == 1);
  CHECK(r.eta == doctest::Approx(1.0));
  CHECK(r.has_batch == 0);
  CHECK(r.has_err == 1);
  CHECK(r.err == doctest::Approx(0.5));
  REQUIRE(gopt_trace_record(t, 50, &r) == GOPT_OK);
  CHECK(r.err <= 6.0 / 52.0);
  CHECK(gopt_trace_record(t, 51, &r) == GOPT_INVALID_INPUT);
  double w[2];
  CHECK(gopt_trace_final(t, w, 2) == GOPT_OK);
  gopt_trace_destroy(t);

  std::vector<std::string> lines;
  REQUIRE(gopt_execute(cfg, collect, &lines) == GOPT_OK);
  CHECK(lines.size() == 2);
  gopt_config_destroy(cfg);
}

TEST_CASE("verification checks") {
  std::vector<std::string> names;
  REQUIRE(gopt_verify_names(collect, &names) == GOPT_OK);
  CHECK(names == std::vector<std::string>{"rate", "optimal", "equiv", "asj", "asfw-a", "asfw-b", "arsfw", "converge"});
  std::vector<std::string> defaults;
  REQUIRE(gopt_verify_defaults("optimal", collect, &defaults) == GOPT_OK);
  CHECK(defaults.size() == 3);
  CHECK(gopt_verify_defaults("bogus", collect, &defaults) != GOPT_OK);

  const char* keys[] = {"pairs", "T"};
  const char* values[] = {"5", "1000"};
  std::vector<std::string> out;
  REQUIRE(gopt_verify("optimal", keys, values, 2, collect, nullptr, &out) == GOPT_OK);
  REQUIRE(out.size() == 2);
  CHECK(out[0].rfind("PASS optimal lower-bound", 0) == 0);

  const char* bad[] = {"colour"};
  CHECK(gopt_verify("optimal", bad, values, 1, collect, nullptr, &out) == GOPT_INVALID_PARAMS);
}
