// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/scenario.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "json_text.hpp"

namespace spencerkit {

using Json = nlohmann::ordered_json;

const char* to_string(ScenarioError::Kind kind) {
  switch (kind) {
    case ScenarioError::Kind::kParse:
      return "parse error";
    case ScenarioError::Kind::kSchema:
      return "schema error";
    case ScenarioError::Kind::kDimension:
      return "dimension mismatch";
    case ScenarioError::Kind::kReference:
      return "unknown reference";
  }
  return "error";
}

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds = {
      "check_acs",  "split_type", "integrability", "cr_check", "solve",
      "spencer_type", "independence", "chart",     "factorize", "transition",
      "cocycle",    "axioms",     "ah_map",        "ah_closure", "over_diagram"};
  return kinds;
}

const ToleranceList& default_tolerances() {
  static const ToleranceList tols = {
      {"tol_acs", 1e-10},        {"tol_split", 1e-8},     {"tol_nijenhuis", 1e-10},
      {"tol_cr", 1e-10},         {"tol_solve", 1e-10},    {"svd_rel_tol", 1e-8},
      {"tol_chart_det", 1e-6},   {"tol_factorize", 1e-9}, {"tol_holomorphy", 1e-9},
      {"tol_transition_fit", 1e-9}, {"tol_cocycle", 1e-8}, {"tol_dedup", 1e-9},
      {"tol_ah_map", 1e-12},     {"tol_diagram", 1e-8}};
  return tols;
}

namespace {

using Kind = ScenarioError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& path, const std::string& message) {
  throw ScenarioError(kind, std::string(to_string(kind)) + " at " + path + ": " + message);
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(Kind::kSchema, path, "expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(Kind::kSchema, path, "unknown key \"" + item.key() + "\"");
  }
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(Kind::kSchema, path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string get_string(const Json& v, const std::string& path) {
  if (!v.is_string()) fail(Kind::kSchema, path, "expected a string");
  return v.get<std::string>();
}

double get_number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(Kind::kSchema, path, "expected a number");
  return v.get<double>();
}

int get_int(const Json& v, const std::string& path, int min_value) {
  if (!v.is_number_integer()) fail(Kind::kSchema, path, "expected an integer");
  const auto value = v.get<long long>();
  if (value < min_value || value > 1000000) {
    fail(Kind::kSchema, path, "value " + std::to_string(value) + " out of range");
  }
  return static_cast<int>(value);
}

bool get_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) fail(Kind::kSchema, path, "expected true or false");
  return v.get<bool>();
}

const Json& get_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(Kind::kSchema, path, "expected an array");
  return v;
}

std::vector<std::string> get_strings(const Json& v, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& item : get_array(v, path)) {
    out.push_back(get_string(item, path + "[" + std::to_string(i++) + "]"));
  }
  return out;
}

Polynomial get_polynomial(const Json& v, std::size_t num_vars, const std::string& prefix,
                          const std::string& path) {
  const std::string text = get_string(v, path);
  try {
    return parse_polynomial(text, num_vars, prefix);
  } catch (const ParseError& e) {
    const std::string what = e.what();
    const Kind kind = what.find("out of range") != std::string::npos ? Kind::kDimension : Kind::kParse;
    fail(kind, path, what);
  }
}

Box get_box(const Json& v, int n, const std::string& path) {
  check_keys(v, path, {"lo", "hi"});
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& x : get_array(require(v, "lo", path), path + ".lo")) lo.push_back(get_number(x, path + ".lo"));
  for (const auto& x : get_array(require(v, "hi", path), path + ".hi")) hi.push_back(get_number(x, path + ".hi"));
  const auto d = static_cast<std::size_t>(2 * n);
  if (lo.size() != d || hi.size() != d) {
    fail(Kind::kDimension, path, "box bounds need " + std::to_string(d) + " entries");
  }
  try {
    return Box(n, std::move(lo), std::move(hi));
  } catch (const ConfigurationError& e) {
    fail(Kind::kSchema, path, e.what());
  }
}

ToleranceList get_tolerances(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(Kind::kSchema, path, "expected an object");
  ToleranceList out;
  const auto& known = default_tolerances();
  for (const auto& item : v.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const auto& t) { return t.first == item.key(); });
    if (!ok) fail(Kind::kSchema, path, "unknown tolerance \"" + item.key() + "\"");
    const double value = get_number(item.value(), path + "." + item.key());
    if (!(value >= 0.0)) fail(Kind::kSchema, path + "." + item.key(), "tolerance must be >= 0");
    out.emplace_back(item.key(), value);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

template <typename T>
void check_unique(const std::vector<T>& items, const std::string& what) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (item.name.empty()) fail(Kind::kSchema, what, "empty name");
    if (!seen.insert(item.name).second) fail(Kind::kSchema, what, "duplicate name \"" + item.name + "\"");
  }
}

template <typename T>
const T* find_named(const std::vector<T>& items, const std::string& name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

TaskDecl parse_task(const Json& v, std::size_t num_vars, const std::string& path) {
  check_keys(v, path,
             {"name", "kind", "expect", "grid", "degree", "fit_degree", "min_m", "function",
              "functions", "chart", "charts", "map", "family", "downstairs", "tolerances"});
  TaskDecl t;
  t.name = get_string(require(v, "name", path), path + ".name");
  t.kind = get_string(require(v, "kind", path), path + ".kind");
  const auto& kinds = task_kinds();
  if (std::find(kinds.begin(), kinds.end(), t.kind) == kinds.end()) {
    fail(Kind::kSchema, path + ".kind", "unknown task kind \"" + t.kind + "\"");
  }
  if (v.contains("expect")) {
    const std::string expect = get_string(v["expect"], path + ".expect");
    if (expect != "fail" && expect != "pass") fail(Kind::kSchema, path + ".expect", "expected \"pass\" or \"fail\"");
    t.expect_fail = expect == "fail";
  }
  if (v.contains("grid")) t.grid = get_int(v["grid"], path + ".grid", 2);
  if (v.contains("degree")) t.degree = get_int(v["degree"], path + ".degree", 1);
  if (v.contains("fit_degree")) t.fit_degree = get_int(v["fit_degree"], path + ".fit_degree", 0);
  if (v.contains("min_m")) t.min_m = get_int(v["min_m"], path + ".min_m", 0);
  if (v.contains("function")) t.function = get_string(v["function"], path + ".function");
  if (v.contains("functions")) t.functions = get_strings(v["functions"], path + ".functions");
  if (v.contains("chart")) t.chart = get_string(v["chart"], path + ".chart");
  if (v.contains("charts")) t.charts = get_strings(v["charts"], path + ".charts");
  if (v.contains("map")) t.map = get_string(v["map"], path + ".map");
  if (v.contains("family")) t.family = get_string(v["family"], path + ".family");
  if (v.contains("downstairs")) {
    const auto& arr = get_array(v["downstairs"], path + ".downstairs");
    // Polynomials in w1..wm; m is checked against the charts later.
    const std::size_t m = arr.size();
    for (std::size_t i = 0; i < m; ++i) {
      t.downstairs.push_back(get_polynomial(arr[i], m, "w", path + ".downstairs[" + std::to_string(i) + "]"));
    }
  }
  if (v.contains("tolerances")) t.tolerances = get_tolerances(v["tolerances"], path + ".tolerances");
  (void)num_vars;
  return t;
}

void validate_references(const Scenario& s) {
  check_unique(s.functions, "functions");
  check_unique(s.maps, "maps");
  check_unique(s.charts, "charts");
  check_unique(s.families, "families");
  check_unique(s.tasks, "tasks");

  auto need = [](bool ok, const std::string& path, const std::string& what) {
    if (!ok) fail(Kind::kReference, path, what);
  };
  for (const auto& m : s.maps) {
    if (!m.inverse.empty()) {
      need(find_named(s.maps, m.inverse) != nullptr, "maps." + m.name + ".inverse",
           "no map named \"" + m.inverse + "\"");
    }
  }
  for (const auto& c : s.charts) {
    for (const auto& f : c.functions) {
      need(find_named(s.functions, f) != nullptr, "charts." + c.name, "no function named \"" + f + "\"");
    }
  }
  for (const auto& f : s.families) {
    for (const auto& m : f.members) {
      need(find_named(s.maps, m) != nullptr, "families." + f.name, "no map named \"" + m + "\"");
    }
    for (const auto& g : f.glue_tests) {
      need(find_named(s.maps, g.map) != nullptr, "families." + f.name + ".glue_tests",
           "no map named \"" + g.map + "\"");
    }
  }

  for (const auto& t : s.tasks) {
    const std::string path = "tasks." + t.name;
    auto schema = [&](bool ok, const std::string& what) {
      if (!ok) fail(Kind::kSchema, path, what);
    };
    auto function = [&](const std::string& name) {
      need(find_named(s.functions, name) != nullptr, path, "no function named \"" + name + "\"");
    };
    auto chart = [&](const std::string& name) {
      need(find_named(s.charts, name) != nullptr, path, "no chart named \"" + name + "\"");
    };
    auto map = [&](const std::string& name) {
      need(find_named(s.maps, name) != nullptr, path, "no map named \"" + name + "\"");
    };
    auto family = [&](const std::string& name) {
      need(find_named(s.families, name) != nullptr, path, "no family named \"" + name + "\"");
    };
    const std::string& k = t.kind;
    if (k == "cr_check") {
      schema(!t.function.empty(), "cr_check needs \"function\"");
      function(t.function);
    } else if (k == "independence") {
      schema(!t.functions.empty(), "independence needs \"functions\"");
      for (const auto& f : t.functions) function(f);
    } else if (k == "chart") {
      schema(!t.chart.empty(), "chart needs \"chart\"");
      chart(t.chart);
    } else if (k == "factorize") {
      schema(!t.chart.empty() && !t.function.empty(), "factorize needs \"chart\" and \"function\"");
      chart(t.chart);
      function(t.function);
    } else if (k == "transition") {
      schema(t.charts.size() == 2, "transition needs two charts");
      for (const auto& c : t.charts) chart(c);
    } else if (k == "cocycle") {
      schema(t.charts.size() == 3, "cocycle needs three charts");
      for (const auto& c : t.charts) chart(c);
    } else if (k == "axioms" || k == "ah_closure") {
      schema(!t.family.empty(), k + " needs \"family\"");
      family(t.family);
    } else if (k == "ah_map") {
      schema(!t.map.empty(), "ah_map needs \"map\"");
      map(t.map);
    } else if (k == "over_diagram") {
      schema(!t.map.empty() && t.charts.size() == 2, "over_diagram needs \"map\" and two charts");
      map(t.map);
      for (const auto& c : t.charts) chart(c);
      const std::size_t m0 = find_named(s.charts, t.charts[0])->functions.size();
      const std::size_t m1 = find_named(s.charts, t.charts[1])->functions.size();
      if (m0 != m1 || t.downstairs.size() != m0) {
        fail(Kind::kDimension, path, "downstairs map needs one polynomial per chart coordinate");
      }
    }
  }
}

Json box_json(const Box& b) {
  Json out = Json::object();
  out["lo"] = b.lo();
  out["hi"] = b.hi();
  return out;
}

Json tolerance_json(const ToleranceList& tols) {
  Json out = Json::object();
  for (const auto& [name, value] : tols) out[name] = value;
  return out;
}

Json string_array(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ScenarioError(Kind::kParse,
                        "parse error at line " + std::to_string(line) + ", column " +
                            std::to_string(column) + ": " + e.what(),
                        line, column);
  }
  check_keys(doc, "scenario",
             {"name", "n", "box", "J", "functions", "maps", "charts", "families", "defaults", "tasks"});

  Scenario s;
  s.name = get_string(require(doc, "name", "scenario"), "name");
  s.n = get_int(require(doc, "n", "scenario"), "n", 1);
  if (s.n > kDefaultDimensionCap) fail(Kind::kSchema, "n", "n above the dimension cap");
  const std::size_t d = static_cast<std::size_t>(2 * s.n);
  s.box = get_box(require(doc, "box", "scenario"), s.n, "box");

  const auto& rows = get_array(require(doc, "J", "scenario"), "J");
  if (rows.size() != d) fail(Kind::kDimension, "J", "J needs " + std::to_string(d) + " rows");
  for (std::size_t r = 0; r < d; ++r) {
    const std::string rpath = "J[" + std::to_string(r) + "]";
    const auto& row = get_array(rows[r], rpath);
    if (row.size() != d) fail(Kind::kDimension, rpath, "row needs " + std::to_string(d) + " entries");
    for (std::size_t c = 0; c < d; ++c) {
      s.j.push_back(get_polynomial(row[c], d, "x", rpath + "[" + std::to_string(c) + "]"));
      if (!s.j.back().is_real()) fail(Kind::kSchema, rpath, "J entries must be real");
    }
  }

  if (doc.contains("functions")) {
    const auto& f = doc["functions"];
    if (!f.is_object()) fail(Kind::kSchema, "functions", "expected an object");
    for (const auto& item : f.items()) {
      s.functions.push_back({item.key(), get_polynomial(item.value(), d, "x", "functions." + item.key())});
    }
  }
  if (doc.contains("maps")) {
    const auto& maps = doc["maps"];
    if (!maps.is_object()) fail(Kind::kSchema, "maps", "expected an object");
    for (const auto& item : maps.items()) {
      const std::string path = "maps." + item.key();
      check_keys(item.value(), path, {"components", "domain", "inverse"});
      MapDecl m;
      m.name = item.key();
      const auto& comps = get_array(require(item.value(), "components", path), path + ".components");
      if (comps.size() != d) fail(Kind::kDimension, path, "map needs " + std::to_string(d) + " components");
      for (std::size_t k = 0; k < d; ++k) {
        m.components.push_back(get_polynomial(comps[k], d, "x", path + ".components[" + std::to_string(k) + "]"));
        if (!m.components.back().is_real()) fail(Kind::kSchema, path, "map components must be real");
      }
      m.domain = item.value().contains("domain") ? get_box(item.value()["domain"], s.n, path + ".domain") : s.box;
      if (item.value().contains("inverse")) m.inverse = get_string(item.value()["inverse"], path + ".inverse");
      s.maps.push_back(std::move(m));
    }
  }
  if (doc.contains("charts")) {
    const auto& charts = doc["charts"];
    if (!charts.is_object()) fail(Kind::kSchema, "charts", "expected an object");
    for (const auto& item : charts.items()) {
      const std::string path = "charts." + item.key();
      check_keys(item.value(), path, {"functions", "box"});
      ChartDecl c;
      c.name = item.key();
      c.functions = get_strings(require(item.value(), "functions", path), path + ".functions");
      if (c.functions.size() > static_cast<std::size_t>(s.n)) {
        fail(Kind::kDimension, path, "a chart has at most n coordinates");
      }
      if (item.value().contains("box")) c.box = get_box(item.value()["box"], s.n, path + ".box");
      s.charts.push_back(std::move(c));
    }
  }
  if (doc.contains("families")) {
    const auto& fams = doc["families"];
    if (!fams.is_object()) fail(Kind::kSchema, "families", "expected an object");
    for (const auto& item : fams.items()) {
      const std::string path = "families." + item.key();
      const Json& v = item.value();
      check_keys(v, path, {"members", "depth", "restrictions", "glue_tests", "generate", "include_inverses"});
      FamilyDecl f;
      f.name = item.key();
      f.members = get_strings(require(v, "members", path), path + ".members");
      if (v.contains("depth")) f.depth = get_int(v["depth"], path + ".depth", 1);
      if (v.contains("restrictions")) {
        for (const auto& b : get_array(v["restrictions"], path + ".restrictions")) {
          f.restrictions.push_back(get_box(b, s.n, path + ".restrictions"));
        }
      }
      if (v.contains("glue_tests")) {
        for (const auto& g : get_array(v["glue_tests"], path + ".glue_tests")) {
          const std::string gpath = path + ".glue_tests";
          check_keys(g, gpath, {"map", "cover"});
          GlueDecl glue;
          glue.map = get_string(require(g, "map", gpath), gpath + ".map");
          for (const auto& b : get_array(require(g, "cover", gpath), gpath + ".cover")) {
            glue.cover.push_back(get_box(b, s.n, gpath + ".cover"));
          }
          f.glue_tests.push_back(std::move(glue));
        }
      }
      if (v.contains("generate")) f.generate = get_bool(v["generate"], path + ".generate");
      if (v.contains("include_inverses")) f.include_inverses = get_bool(v["include_inverses"], path + ".include_inverses");
      s.families.push_back(std::move(f));
    }
  }
  if (doc.contains("defaults")) {
    const Json& v = doc["defaults"];
    check_keys(v, "defaults", {"grid", "degree", "tolerances"});
    if (v.contains("grid")) s.defaults.grid = get_int(v["grid"], "defaults.grid", 2);
    if (v.contains("degree")) s.defaults.degree = get_int(v["degree"], "defaults.degree", 1);
    if (v.contains("tolerances")) s.defaults.tolerances = get_tolerances(v["tolerances"], "defaults.tolerances");
  }
  if (doc.contains("tasks")) {
    std::size_t i = 0;
    for (const auto& t : get_array(doc["tasks"], "tasks")) {
      s.tasks.push_back(parse_task(t, d, "tasks[" + std::to_string(i++) + "]"));
    }
  }
  validate_references(s);
  return s;
}

std::string emit_scenario(const Scenario& s) {
  Json doc = Json::object();
  doc["name"] = s.name;
  doc["n"] = s.n;
  doc["box"] = box_json(s.box);
  const std::size_t d = static_cast<std::size_t>(2 * s.n);
  Json j = Json::array();
  for (std::size_t r = 0; r < d; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < d; ++c) row.push_back(s.j[r * d + c].to_string("x"));
    j.push_back(std::move(row));
  }
  doc["J"] = std::move(j);

  Json funcs = Json::object();
  for (const auto& f : s.functions) funcs[f.name] = f.expr.to_string("x");
  doc["functions"] = std::move(funcs);

  Json maps = Json::object();
  for (const auto& m : s.maps) {
    Json v = Json::object();
    Json comps = Json::array();
    for (const auto& c : m.components) comps.push_back(c.to_string("x"));
    v["components"] = std::move(comps);
    v["domain"] = box_json(m.domain);
    if (!m.inverse.empty()) v["inverse"] = m.inverse;
    maps[m.name] = std::move(v);
  }
  doc["maps"] = std::move(maps);

  Json charts = Json::object();
  for (const auto& c : s.charts) {
    Json v = Json::object();
    v["functions"] = string_array(c.functions);
    if (c.box) v["box"] = box_json(*c.box);
    charts[c.name] = std::move(v);
  }
  doc["charts"] = std::move(charts);

  Json fams = Json::object();
  for (const auto& f : s.families) {
    Json v = Json::object();
    v["members"] = string_array(f.members);
    v["depth"] = f.depth;
    Json restrictions = Json::array();
    for (const auto& b : f.restrictions) restrictions.push_back(box_json(b));
    v["restrictions"] = std::move(restrictions);
    Json glue = Json::array();
    for (const auto& g : f.glue_tests) {
      Json cover = Json::array();
      for (const auto& b : g.cover) cover.push_back(box_json(b));
      glue.push_back(Json{{"map", g.map}, {"cover", std::move(cover)}});
    }
    v["glue_tests"] = std::move(glue);
    v["generate"] = f.generate;
    v["include_inverses"] = f.include_inverses;
    fams[f.name] = std::move(v);
  }
  doc["families"] = std::move(fams);

  Json defaults = Json::object();
  defaults["grid"] = s.defaults.grid;
  defaults["degree"] = s.defaults.degree;
  defaults["tolerances"] = tolerance_json(s.defaults.tolerances);
  doc["defaults"] = std::move(defaults);

  Json tasks = Json::array();
  for (const auto& t : s.tasks) {
    Json v = Json::object();
    v["name"] = t.name;
    v["kind"] = t.kind;
    if (t.expect_fail) v["expect"] = "fail";
    if (t.grid) v["grid"] = *t.grid;
    if (t.degree) v["degree"] = *t.degree;
    if (t.fit_degree) v["fit_degree"] = *t.fit_degree;
    if (t.min_m) v["min_m"] = *t.min_m;
    if (!t.function.empty()) v["function"] = t.function;
    if (!t.functions.empty()) v["functions"] = string_array(t.functions);
    if (!t.chart.empty()) v["chart"] = t.chart;
    if (!t.charts.empty()) v["charts"] = string_array(t.charts);
    if (!t.map.empty()) v["map"] = t.map;
    if (!t.family.empty()) v["family"] = t.family;
    if (!t.downstairs.empty()) {
      Json down = Json::array();
      for (const auto& p : t.downstairs) down.push_back(p.to_string("w"));
      v["downstairs"] = std::move(down);
    }
    if (!t.tolerances.empty()) v["tolerances"] = tolerance_json(t.tolerances);
    tasks.push_back(std::move(v));
  }
  doc["tasks"] = std::move(tasks);
  return detail::dump_json(doc) + "\n";
}

}  // namespace spencerkit
