// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "json_text.hpp"
#include "spencerkit/scenario.hpp"

namespace spencerkit {

namespace detail {
namespace {

using Json = nlohmann::ordered_json;

std::string number_text(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_double(v);
}

void write(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(item.key()).dump() + ": ";
        write(item.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += inner;
        write(e, indent + 1, out);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += number_text(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  write(value, 0, out);
  return out;
}

}  // namespace detail

namespace {

using Json = nlohmann::ordered_json;

const char* comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::kLessEqual:
      return "<=";
    case Comparison::kLess:
      return "<";
    case Comparison::kGreaterEqual:
      return ">=";
    case Comparison::kGreater:
      return ">";
    case Comparison::kInformational:
      return "";
  }
  return "";
}

std::string json_report(const RunResult& result) {
  Json doc = Json::object();
  doc["scenario"] = result.scenario;
  doc["version"] = result.version;
  doc["overall"] = result.passed() ? "pass" : "fail";
  Json tasks = Json::array();
  for (const auto& t : result.tasks) {
    Json entry = Json::object();
    entry["task"] = t.name;
    entry["kind"] = t.kind;
    entry["status"] = t.passed ? "pass" : "fail";
    entry["expect"] = t.expect_fail ? "fail" : "pass";
    Json metrics = Json::object();
    for (const auto& m : t.report.metrics()) metrics[m.name] = m.value;
    entry["metrics"] = std::move(metrics);
    Json tols = Json::object();
    for (const auto& [name, value] : t.report.tolerances()) tols[name] = value;
    entry["tolerances"] = std::move(tols);
    Json notes = Json::array();
    for (const auto& n : t.report.notes()) notes.push_back(n);
    entry["notes"] = std::move(notes);
    tasks.push_back(std::move(entry));
  }
  doc["tasks"] = std::move(tasks);
  return detail::dump_json(doc) + "\n";
}

std::string text_report(const RunResult& result) {
  std::string out = "scenario " + result.scenario + " (spencerkit " + result.version + "): " +
                    (result.passed() ? "PASS" : "FAIL") + "\n";
  char buf[64];
  for (const auto& t : result.tasks) {
    std::snprintf(buf, sizeof buf, "%.3f s", t.seconds);
    out += std::string(t.passed ? "[pass] " : "[FAIL] ") + t.name + " (" + t.kind +
           (t.expect_fail ? ", expect fail" : "") + ", " + buf + ")\n";
    for (const auto& m : t.report.metrics()) {
      out += "    " + m.name + " = " + format_double(m.value);
      if (m.comparison != Comparison::kInformational) {
        out += std::string(" ") + comparison_symbol(m.comparison) + " " + m.tolerance_name + " = " +
               format_double(m.threshold) + (m.satisfied() ? "" : "  (violated)");
      }
      out += "\n";
    }
    for (const auto& n : t.report.notes()) out += "    note: " + n + "\n";
  }
  return out;
}

}  // namespace

std::string emit_report(const RunResult& result, ReportFormat format) {
  return format == ReportFormat::kJson ? json_report(result) : text_report(result);
}

}  // namespace spencerkit
