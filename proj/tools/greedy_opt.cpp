// greedy-opt: command-line front end over the C interface.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "greedyopt/greedyopt.h"

namespace {

void print_stdout(const char* line, void*) {
  std::fputs(line, stdout);
  std::fputc('\n', stdout);
  std::fflush(stdout);
}

void print_stderr(const char* line, void*) {
  std::fprintf(stderr, "  %s\n", line);
}

void collect(const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->emplace_back(line); }

// 0 on success, 1 when a run or check completed with a failed assertion,
// 2 on any other error.
int report(gopt_status status) {
  if (status == GOPT_OK) return 0;
  std::fprintf(stderr, "greedy-opt: %s: %s\n", gopt_status_name(status), gopt_last_error());
  return status == GOPT_CHECK_FAILED ? 1 : 2;
}

int cmd_run(const std::string& path) {
  gopt_config* cfg = nullptr;
  gopt_status st = gopt_config_load(path.c_str(), &cfg);
  if (st == GOPT_OK) st = gopt_execute(cfg, print_stdout, nullptr);
  gopt_config_destroy(cfg);
  return report(st);
}

int cmd_verify(const std::string& name, const std::vector<std::string>& extras) {
  std::vector<std::string> keys, values;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) {
      std::fprintf(stderr, "greedy-opt: verify %s: expected --param value, got '%s'\n", name.c_str(), a.c_str());
      return 2;
    }
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      keys.push_back(a.substr(2, eq - 2));
      values.push_back(a.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      keys.push_back(a.substr(2));
      values.push_back(extras[++i]);
    } else {
      std::fprintf(stderr, "greedy-opt: verify %s: missing value for %s\n", name.c_str(), a.c_str());
      return 2;
    }
  }
  std::vector<const char*> k, v;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    k.push_back(keys[i].c_str());
    v.push_back(values[i].c_str());
  }
  return report(gopt_verify(name.c_str(), k.data(), v.data(), k.size(), print_stdout, print_stderr, nullptr));
}

std::string verify_footer() {
  std::vector<std::string> names;
  gopt_verify_names(collect, &names);
  std::string text = "Checks and their parameters (override with --name value):\n";
  for (const auto& n : names) {
    std::vector<std::string> defaults;
    gopt_verify_defaults(n.c_str(), collect, &defaults);
    text += "  " + n + ":";
    for (const auto& d : defaults) text += " " + d;
    text += "\n";
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy projection-free optimization: runs, traces and convergence checks"};
  app.name("greedy-opt");
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Execute a configured run and write its CSV trace");
  run->add_option("config", config_path, "Config file of key = value lines")->required();

  std::string check;
  auto* verify = app.add_subcommand("verify", "Run a convergence or counterexample check");
  verify->add_option("check", check, "rate, optimal, equiv, asj, asfw-a, asfw-b, arsfw or converge")->required();
  verify->allow_extras();
  verify->footer(verify_footer());

  app.add_subcommand("list-problems", "List the problem ids accepted in configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return cmd_run(config_path);
  if (verify->parsed()) return cmd_verify(check, verify->remaining());
  return report(gopt_list_problems(print_stdout, nullptr));
}
