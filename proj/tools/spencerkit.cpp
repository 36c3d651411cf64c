// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

// spencerkit: run validation scenarios and print their reports.
//
//   spencerkit run <scenario.json | builtin:NAME> [--format json|text]
//                  [--grid K] [--degree D] [--tol NAME=VALUE ...] [--task NAME]
//   spencerkit builtin <name>
//   spencerkit version
//
// Exit codes: 0 pass, 1 fail, 2 invalid scenario or invocation, 3 numerical error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spencerkit/scenario.hpp"
#include "spencerkit/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spencerkit::ConfigurationError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

spencerkit::Scenario load(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return spencerkit::builtin_scenario(source.substr(prefix.size()));
  return spencerkit::parse_scenario(read_file(source));
}

spencerkit::ToleranceList parse_tolerances(const std::vector<std::string>& items) {
  spencerkit::ToleranceList out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw spencerkit::ConfigurationError("--tol expects NAME=VALUE, got " + item);
    }
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      throw spencerkit::ConfigurationError("--tol value is not a number: " + item);
    }
    out.emplace_back(item.substr(0, eq), v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for almost complex structures and Spencer charts"};
  app.require_subcommand(1);

  std::string source;
  std::string format = "json";
  int grid = 0;
  int degree = 0;
  std::vector<std::string> tols;
  std::string task;
  auto* run = app.add_subcommand("run", "Run a scenario file or builtin:NAME");
  run->add_option("scenario", source, "Scenario JSON file or builtin:NAME")->required();
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  auto* grid_opt = run->add_option("--grid", grid, "Grid points per axis for every task");
  auto* degree_opt = run->add_option("--degree", degree, "Polynomial degree for solver tasks");
  run->add_option("--tol", tols, "Tolerance override NAME=VALUE")->expected(1, -1);
  auto* task_opt = run->add_option("--task", task, "Run a single task");

  std::string builtin;
  auto* show = app.add_subcommand("builtin", "Print a builtin scenario");
  show->add_option("name", builtin, "One of std_c1, std_c2, twisted_r4")->required();

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (app.got_subcommand("version")) {
      std::printf("spencerkit %s\n", spencerkit::kVersion);
      return kExitPass;
    }
    if (app.got_subcommand("builtin")) {
      std::fputs(spencerkit::emit_scenario(spencerkit::builtin_scenario(builtin)).c_str(), stdout);
      return kExitPass;
    }
    const spencerkit::Scenario scenario = load(source);
    spencerkit::RunOptions options;
    if (grid_opt->count() > 0) options.grid = grid;
    if (degree_opt->count() > 0) options.degree = degree;
    options.tolerances = parse_tolerances(tols);
    if (task_opt->count() > 0) options.only_task = task;
    const spencerkit::RunResult result = spencerkit::run(scenario, options);
    const auto fmt = format == "text" ? spencerkit::ReportFormat::kText : spencerkit::ReportFormat::kJson;
    std::fputs(spencerkit::emit_report(result, fmt).c_str(), stdout);
    if (result.passed()) return kExitPass;
    return result.numerical_error() ? kExitNumerical : kExitFail;
  } catch (const spencerkit::ScenarioError& e) {
    std::fprintf(stderr, "spencerkit: %s\n", e.what());
    return kExitInvalid;
  } catch (const spencerkit::ConfigurationError& e) {
    std::fprintf(stderr, "spencerkit: %s\n", e.what());
    return kExitInvalid;
  } catch (const spencerkit::NumericalError& e) {
    std::fprintf(stderr, "spencerkit: numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "spencerkit: %s\n", e.what());
    return kExitNumerical;
  }
}
