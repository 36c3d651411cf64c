// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spencerkit {

bool Metric::satisfied() const {
  if (std::isnan(value)) return comparison == Comparison::kInformational;
  switch (comparison) {
    case Comparison::kLessEqual:
      return value <= threshold;
    case Comparison::kLess:
      return value < threshold;
    case Comparison::kGreaterEqual:
      return value >= threshold;
    case Comparison::kGreater:
      return value > threshold;
    case Comparison::kInformational:
      return true;
  }
  return false;
}

Report& Report::check(std::string name, double value, Comparison comparison,
                      std::string tolerance_name, double threshold) {
  metrics_.push_back({std::move(name), value, comparison, std::move(tolerance_name), threshold});
  return *this;
}

Report& Report::info(std::string name, double value) {
  metrics_.push_back({std::move(name), value, Comparison::kInformational, {}, 0.0});
  return *this;
}

Report& Report::note(std::string text) {
  notes_.push_back(std::move(text));
  return *this;
}

Report& Report::fail(std::string reason) {
  errored_ = true;
  notes_.push_back(std::move(reason));
  return *this;
}

Report& Report::tolerance(std::string name, double value) {
  extra_tolerances_.emplace_back(std::move(name), value);
  return *this;
}

bool Report::passed() const {
  return !errored_ && std::all_of(metrics_.begin(), metrics_.end(),
                                  [](const Metric& m) { return m.satisfied(); });
}

std::vector<std::pair<std::string, double>> Report::tolerances() const {
  std::vector<std::pair<std::string, double>> out;
  auto add = [&out](const std::string& name, double value) {
    if (name.empty()) return;
    if (std::none_of(out.begin(), out.end(), [&](const auto& t) { return t.first == name; })) {
      out.emplace_back(name, value);
    }
  };
  for (const auto& m : metrics_) add(m.tolerance_name, m.threshold);
  for (const auto& [name, value] : extra_tolerances_) add(name, value);
  return out;
}

const Metric* Report::find(const std::string& name) const {
  const auto it = std::find_if(metrics_.begin(), metrics_.end(),
                               [&](const Metric& m) { return m.name == name; });
  return it == metrics_.end() ? nullptr : &*it;
}

double Report::value(const std::string& name) const {
  const Metric* m = find(name);
  if (m == nullptr) throw std::out_of_range("no metric named " + name);
  return m->value;
}

}  // namespace spencerkit
