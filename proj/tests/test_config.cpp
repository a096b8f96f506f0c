#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "doctest.h"
#include "greedyopt/config.hpp"
#include "greedyopt/errors.hpp"
#include "greedyopt/problems.hpp"

using namespace greedyopt;

namespace {

// Message of the ParseError raised for `text`, or "" if it parsed.
std::string parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kMinimal = "problem = asj-triangle\nalgorithm = fw\nT = 10\nseed = 1\noutput = out.csv\n";

}  // namespace

TEST_CASE("minimal config takes the defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.problem == "asj-triangle");
  CHECK(c.algorithm == "fw");
  CHECK(c.T == 10);
  CHECK(c.seed == 1);
  CHECK(c.replicas == 1);
  CHECK(c.oracle_mode == OracleMode::Exact);
  CHECK(c.eta == "standard");
  CHECK(c.eps == "zero");
  CHECK(c.horizon() == 10);
}

TEST_CASE("comments, whitespace and CRLF") {
  const RunConfig c = parse_config("# header\r\n  problem =  asfw-two-point  # trailing\r\nalgorithm=asfw\r\n\r\nT=5\nseed=18446744073709551615\noutput=x.csv\nbatch = anytime\n");
  CHECK(c.problem == "asfw-two-point");
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.batch == "anytime");
  CHECK(c.eta == "anytime");
}

TEST_CASE("config errors name the line and key") {
  CHECK(parse_error(std::string(kMinimal) + "colour = red\n") == "line 6: key 'colour': unknown key");
  CHECK(parse_error("problem = asj-triangle\nalgorithm = fw\nT = 10\noutput = o\n") ==
        "config: key 'seed': missing required key");
  CHECK(parse_error(std::string(kMinimal) + "T = 3\n").find("line 6: key 'T': duplicate key") == 0);
  CHECK(parse_error(std::string(kMinimal) + "eta =\n") == "line 6: key 'eta': empty value");
  CHECK(parse_error(std::string(kMinimal) + "just words\n").find("line 6") == 0);
  CHECK(parse_error("problem = p\nalgorithm = fw\nT = ten\nseed = 1\noutput = o\n").find("line 3: key 'T'") == 0);
  CHECK(parse_error("problem = p\nalgorithm = fw\nT = 0\nseed = 1\noutput = o\n").find("line 3: key 'T'") == 0);
  CHECK(parse_error("problem = p\nalgorithm = sgd\nT = 1\nseed = 1\noutput = o\n").find("line 2: key 'algorithm'") == 0);
  CHECK(parse_error(std::string(kMinimal) + "batch = one\n").find("line 6: key 'batch': not used") == 0);
  CHECK(parse_error(std::string(kMinimal) + "eta = line\n").find("key 'eta'") != std::string::npos);
  CHECK(parse_error("problem = p\nalgorithm = asj\nT = 1\nseed = 1\noutput = o\neps = c-linked\n")
            .find("line 6: key 'eps'") == 0);
  CHECK(parse_error("problem = p\nalgorithm = arsfw\nT = 1\nseed = 1\noutput = o\nlambda = 0.5\n")
            .find("line 6: key 'lambda'") == 0);
  CHECK(parse_error("problem = p\nalgorithm = arsfw\nT = 1\nseed = 1\noutput = o\nc = 0\n").find("line 6: key 'c'") == 0);
  CHECK(parse_error("problem = p\nalgorithm = asfw\nT = 1\nseed = 1\noutput = o\nb = 4\n").find("line 6: key 'b'") == 0);
}

TEST_CASE("per-algorithm resolution") {
  const RunConfig a = parse_config("problem = p\nalgorithm = arsfw\nT = 1\nseed = 1\noutput = o\nsigma = fixed\n");
  CHECK(a.eta == "arsfw");
  CHECK(a.eps == "arsfw");
  CHECK(a.batch == "one");
  CHECK(a.c == 1.0);
  CHECK(a.sigma == "fixed");
  const RunConfig j = parse_config("problem = p\nalgorithm = jones\nT = 1\nseed = 1\noutput = o\neta = line\neps = corollary\n");
  CHECK(j.eps == "corollary");
  const RunConfig s = parse_config("problem = p\nalgorithm = asj\nT = 1\nseed = 1\noutput = o\n");
  CHECK(s.inner_mode == "exact_joint");
  CHECK(s.eta == "standard");
  const RunConfig h = parse_config("problem = p\nalgorithm = asfw\nT = 1\nseed = 1\noutput = o\nbatch = horizon\nt_horizon = 40\n");
  CHECK(h.eta == "horizon");
  CHECK(h.horizon() == 40);
}

TEST_CASE("load_config reports the path") {
  try {
    load_config("/nonexistent/dir/run.cfg");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
    CHECK(std::string(e.what()).find("/nonexistent/dir/run.cfg") != std::string::npos);
  }
}

TEST_CASE("csv rows") {
  CHECK(std::string(csv_header()) == "k,eta,eps,b,sigma,f_w,f_avg,gap,err,replica,seed");
  Trace t;
  TraceRecord r;
  r.k = 3;
  r.eta = 0.1;
  r.eps = 0.0;
  r.f_w = 1.0 / 3.0;
  r.gap = 2.0;
  t.records.push_back(r);
  CHECK(trace_csv_rows(t, 0, 7) == "3,0.10000000000000001,0,,,0.33333333333333331,,2,,0,7\n");
}

TEST_CASE("execute writes one block per replica") {
  const auto dir = std::filesystem::temp_directory_path() / "greedyopt_test_config";
  std::filesystem::create_directories(dir);
  const auto out = dir / "run.csv";
  RunConfig c = parse_config("problem = asj-triangle\nalgorithm = asj\nT = 20\nseed = 5\nreplicas = 3\noutput = " +
                             out.string() + "\n");
  std::vector<std::string> lines;
  const ExecuteReport rep = execute(c, [&](const std::string& l) { lines.push_back(l); });
  CHECK(rep.ok());
  REQUIRE(rep.replicas.size() == 3);
  CHECK(rep.replicas[2].seed == 7);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].rfind("replica 0 seed 5:", 0) == 0);
  CHECK(lines[3].rfind("mean err = ", 0) == 0);

  const std::string csv = slurp(out);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.rfind(std::string(csv_header()) + "\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 1 + 3 * 20);

  // The same replica on its own reproduces its rows.
  const auto inst = make_problem(c.problem);
  const std::string one = trace_csv_rows(run_config_replica(c, inst, 6), 1, 6);
  CHECK(csv.find(one) != std::string::npos);

  execute(c, [](const std::string&) {});
  CHECK(slurp(out) == csv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("execute fails early on an unwritable output") {
  RunConfig c = parse_config("problem = asj-triangle\nalgorithm = fw\nT = 5\nseed = 1\noutput = /nonexistent/dir/x.csv\n");
  try {
    execute(c, [](const std::string&) {});
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
