// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_SCENARIO_HPP_
#define SPENCERKIT_SCENARIO_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spencerkit/box.hpp"
#include "spencerkit/errors.hpp"
#include "spencerkit/polynomial.hpp"
#include "spencerkit/report.hpp"

namespace spencerkit {

/// Invalid scenario document. Each kind is a distinct diagnostic.
class ScenarioError : public Error {
 public:
  enum class Kind { kParse, kSchema, kDimension, kReference };

  ScenarioError(Kind kind, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), kind_(kind), line_(line), column_(column) {}
  Kind kind() const noexcept { return kind_; }
  /// 1-based; 0 when the error is not tied to a text position.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

const char* to_string(ScenarioError::Kind kind);

using ToleranceList = std::vector<std::pair<std::string, double>>;

struct NamedPolynomial {
  std::string name;
  Polynomial expr;
  friend bool operator==(const NamedPolynomial&, const NamedPolynomial&) = default;
};

struct MapDecl {
  std::string name;
  std::vector<Polynomial> components;
  Box domain;
  std::string inverse;  ///< name of a declared inverse map, or empty
  friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct ChartDecl {
  std::string name;
  std::vector<std::string> functions;
  std::optional<Box> box;  ///< defaults to the scenario box
  friend bool operator==(const ChartDecl&, const ChartDecl&) = default;
};

struct GlueDecl {
  std::string map;
  std::vector<Box> cover;
  friend bool operator==(const GlueDecl&, const GlueDecl&) = default;
};

struct FamilyDecl {
  std::string name;
  std::vector<std::string> members;
  int depth = 1;
  std::vector<Box> restrictions;
  std::vector<GlueDecl> glue_tests;
  /// Close the members under generate() before validating.
  bool generate = true;
  bool include_inverses = true;
  friend bool operator==(const FamilyDecl&, const FamilyDecl&) = default;
};

struct Defaults {
  int grid = 7;
  int degree = 3;
  ToleranceList tolerances;
  friend bool operator==(const Defaults&, const Defaults&) = default;
};

/// One task. Which reference fields apply depends on `kind`.
struct TaskDecl {
  std::string name;
  std::string kind;
  bool expect_fail = false;
  std::optional<int> grid;
  std::optional<int> degree;
  std::optional<int> fit_degree;
  std::optional<int> min_m;
  std::string function;
  std::vector<std::string> functions;
  std::string chart;
  std::vector<std::string> charts;
  std::string map;
  std::string family;
  std::vector<Polynomial> downstairs;  ///< polynomials in w1..wm
  ToleranceList tolerances;
  friend bool operator==(const TaskDecl&, const TaskDecl&) = default;
};

struct Scenario {
  std::string name;
  int n = 1;
  Box box;
  std::vector<Polynomial> j;  ///< row-major (2n)^2 entries
  std::vector<NamedPolynomial> functions;
  std::vector<MapDecl> maps;
  std::vector<ChartDecl> charts;
  std::vector<FamilyDecl> families;
  Defaults defaults;
  std::vector<TaskDecl> tasks;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Task kinds understood by run().
const std::vector<std::string>& task_kinds();

/// Parses and validates a JSON scenario. Throws ScenarioError.
Scenario parse_scenario(const std::string& text);

/// Canonical JSON form; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

std::vector<std::string> builtin_names();
/// Throws ConfigurationError for unknown names.
Scenario builtin_scenario(const std::string& name);

/// Built-in tolerance defaults, in emission order.
const ToleranceList& default_tolerances();

struct RunOptions {
  std::optional<int> grid;
  std::optional<int> degree;
  /// Highest-priority tolerance overrides (e.g. from the command line).
  ToleranceList tolerances;
  /// Run only the task with this name; ConfigurationError if absent.
  std::optional<std::string> only_task;
};

struct TaskResult {
  std::string name;
  std::string kind;
  bool expect_fail = false;
  bool passed = false;
  /// Set when the task raised a NumericalError.
  bool numerical_error = false;
  Report report;
  double seconds = 0.0;
};

struct RunResult {
  std::string scenario;
  std::string version;
  std::vector<TaskResult> tasks;

  /// Every task passed (vacuously true for an empty task list).
  bool passed() const;
  bool numerical_error() const;
};

/// Executes tasks in declaration order. Task-level errors are captured in
/// the task's Report.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

enum class ReportFormat { kJson, kText };

/// JSON output is byte-stable for a given input and version (timings only
/// appear in the text form).
std::string emit_report(const RunResult& result, ReportFormat format);

}  // namespace spencerkit

#endif  // SPENCERKIT_SCENARIO_HPP_
