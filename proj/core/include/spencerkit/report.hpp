// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_REPORT_HPP_
#define SPENCERKIT_REPORT_HPP_

#include <string>
#include <vector>

namespace spencerkit {

enum class Comparison {
  kLessEqual,
  kLess,
  kGreaterEqual,
  kGreater,
  kInformational,  ///< recorded, never gates the status
};

struct Metric {
  std::string name;
  double value = 0.0;
  Comparison comparison = Comparison::kInformational;
  std::string tolerance_name;
  double threshold = 0.0;

  bool satisfied() const;
};

/// Named metrics with their tolerance comparisons. A report passes iff it
/// carries no error and every gated metric satisfies its comparison.
class Report {
 public:
  explicit Report(std::string task = {}) : task_(std::move(task)) {}

  const std::string& task() const { return task_; }
  void set_task(std::string task) { task_ = std::move(task); }

  Report& check(std::string name, double value, Comparison comparison,
                std::string tolerance_name, double threshold);
  Report& check_at_most(std::string name, double value, std::string tolerance_name,
                        double threshold) {
    return check(std::move(name), value, Comparison::kLessEqual, std::move(tolerance_name),
                 threshold);
  }
  Report& info(std::string name, double value);
  Report& note(std::string text);
  /// Marks the task as failed by an exception or precondition violation.
  Report& fail(std::string reason);
  /// Adds an extra tolerance echo that is not tied to a metric.
  Report& tolerance(std::string name, double value);

  bool passed() const;
  bool errored() const { return errored_; }
  const std::vector<Metric>& metrics() const { return metrics_; }
  const std::vector<std::string>& notes() const { return notes_; }
  /// Tolerances referenced by metrics plus explicit echoes, first-seen order.
  std::vector<std::pair<std::string, double>> tolerances() const;
  const Metric* find(const std::string& name) const;
  double value(const std::string& name) const;

 private:
  std::string task_;
  std::vector<Metric> metrics_;
  std::vector<std::pair<std::string, double>> extra_tolerances_;
  std::vector<std::string> notes_;
  bool errored_ = false;
};

}  // namespace spencerkit

#endif  // SPENCERKIT_REPORT_HPP_
