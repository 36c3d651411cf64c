// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <utility>

#include "spencerkit/scenario.hpp"

namespace spencerkit {
namespace {

// Standard structure on C, box [-1,1]^2.
constexpr const char* kStdC1 = R"json({
  "name": "std_c1",
  "n": 1,
  "box": {"lo": [-1, -1], "hi": [1, 1]},
  "J": [["0", "-1"], ["1", "0"]],
  "functions": {
    "z": "x1 + (0+1i)*x2",
    "zbar": "x1 - (0+1i)*x2",
    "p": "1 + x1 - 0.5*x1^2 + 0.5*x2^2 + (0+1i)*x2 - (0+1i)*x1*x2",
    "z_cubic": "x1 + 0.1*x1^3 - 0.3*x1*x2^2 + (0+1i)*x2 + (0+0.3i)*x1^2*x2 - (0+0.1i)*x2^3",
    "z_quad": "x1 + 0.1*x1^2 - 0.1*x2^2 + (0+1i)*x2 + (0+0.2i)*x1*x2",
    "z_double": "2*x1 + (0+2i)*x2"
  },
  "maps": {
    "id": {"components": ["x1", "x2"], "domain": {"lo": [-1, -1], "hi": [1, 1]}},
    "sq": {"components": ["x1^2 - x2^2", "2*x1*x2"], "domain": {"lo": [0.2, 0.2], "hi": [0.6, 0.6]}},
    "half": {"components": ["0.5*x1 + 0.25", "0.5*x2"], "domain": {"lo": [-1, -1], "hi": [1, 1]}},
    "conj": {"components": ["x1", "-x2"], "domain": {"lo": [-1, -1], "hi": [1, 1]}},
    "t_a": {"components": ["x1 + 0.5", "x2"], "domain": {"lo": [-1, -1], "hi": [0.5, 1]}},
    "s2": {"components": ["2*x1", "2*x2"], "domain": {"lo": [-0.5, -0.5], "hi": [0.5, 0.5]}}
  },
  "charts": {
    "cz": {"functions": ["z"]},
    "ccub": {"functions": ["z_cubic"]},
    "ca": {"functions": ["z"], "box": {"lo": [-0.1, -0.1], "hi": [0.1, 0.1]}},
    "cb": {"functions": ["z_quad"], "box": {"lo": [-0.1, -0.1], "hi": [0.1, 0.1]}},
    "cc": {"functions": ["z_double"], "box": {"lo": [-0.1, -0.1], "hi": [0.1, 0.1]}}
  },
  "families": {
    "pg": {
      "members": ["t_a", "s2"],
      "depth": 2,
      "restrictions": [{"lo": [-0.5, -0.5], "hi": [0, 0]}],
      "glue_tests": [{"map": "t_a", "cover": [{"lo": [-1, -1], "hi": [-0.25, 1]},
                                              {"lo": [-0.25, -1], "hi": [0.5, 1]}]}]
    },
    "pg_noinv": {
      "members": ["t_a", "s2"],
      "depth": 2,
      "restrictions": [{"lo": [-0.5, -0.5], "hi": [0, 0]}],
      "glue_tests": [{"map": "t_a", "cover": [{"lo": [-1, -1], "hi": [-0.25, 1]},
                                              {"lo": [-0.25, -1], "hi": [0.5, 1]}]}],
      "include_inverses": false
    },
    "ah_family": {"members": ["sq", "half"], "depth": 2}
  },
  "defaults": {"grid": 9, "degree": 3},
  "tasks": [
    {"name": "acs", "kind": "check_acs", "grid": 7},
    {"name": "split", "kind": "split_type", "grid": 7},
    {"name": "integrable", "kind": "integrability", "grid": 7},
    {"name": "cr_z", "kind": "cr_check", "function": "z"},
    {"name": "cr_zbar", "kind": "cr_check", "function": "zbar", "expect": "fail"},
    {"name": "solve", "kind": "solve", "degree": 3, "min_m": 3},
    {"name": "type", "kind": "spencer_type", "grid": 7},
    {"name": "independent_z", "kind": "independence", "functions": ["z"]},
    {"name": "chart_z", "kind": "chart", "chart": "cz"},
    {"name": "factor_p", "kind": "factorize", "chart": "cz", "function": "p"},
    {"name": "factor_zbar", "kind": "factorize", "chart": "cz", "function": "zbar",
     "fit_degree": 6, "expect": "fail"},
    {"name": "transition_cubic", "kind": "transition", "charts": ["cz", "ccub"]},
    {"name": "cocycle", "kind": "cocycle", "charts": ["ca", "cb", "cc"], "fit_degree": 6},
    {"name": "ah_square", "kind": "ah_map", "map": "sq"},
    {"name": "ah_conjugation", "kind": "ah_map", "map": "conj", "expect": "fail"},
    {"name": "ah_closure", "kind": "ah_closure", "family": "ah_family"},
    {"name": "axioms", "kind": "axioms", "family": "pg"},
    {"name": "axioms_without_inverses", "kind": "axioms", "family": "pg_noinv", "expect": "fail"},
    {"name": "diagram_cubic", "kind": "over_diagram", "map": "id", "charts": ["cz", "ccub"],
     "downstairs": ["w1 + 0.1*w1^3"]},
    {"name": "diagram_identity", "kind": "over_diagram", "map": "id", "charts": ["cz", "cz"],
     "downstairs": ["w1"]}
  ]
})json";

// Standard structure on C^2, box [-1,1]^4.
constexpr const char* kStdC2 = R"json({
  "name": "std_c2",
  "n": 2,
  "box": {"lo": [-1, -1, -1, -1], "hi": [1, 1, 1, 1]},
  "J": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
  "functions": {
    "z1": "x1 + (0+1i)*x2",
    "z2": "x3 + (0+1i)*x4",
    "z1bar": "x1 - (0+1i)*x2",
    "h": "x1*x3 - x2*x4 + (0+1i)*x1*x4 + (0+1i)*x2*x3 + x1^2 - x2^2 + (0+2i)*x1*x2"
  },
  "maps": {
    "id": {"components": ["x1", "x2", "x3", "x4"]},
    "swap": {"components": ["x3", "x4", "x1", "x2"]}
  },
  "charts": {
    "c12": {"functions": ["z1", "z2"]},
    "c1": {"functions": ["z1"]}
  },
  "defaults": {"grid": 5, "degree": 3},
  "tasks": [
    {"name": "acs", "kind": "check_acs", "grid": 7},
    {"name": "split", "kind": "split_type", "grid": 7},
    {"name": "integrable", "kind": "integrability"},
    {"name": "cr_z1", "kind": "cr_check", "function": "z1"},
    {"name": "cr_z1bar", "kind": "cr_check", "function": "z1bar", "expect": "fail"},
    {"name": "solve_linear", "kind": "solve", "degree": 1, "min_m": 2},
    {"name": "type", "kind": "spencer_type", "grid": 7},
    {"name": "independent_z", "kind": "independence", "functions": ["z1", "z2"]},
    {"name": "chart_full", "kind": "chart", "chart": "c12"},
    {"name": "chart_partial", "kind": "chart", "chart": "c1"},
    {"name": "factor_h", "kind": "factorize", "chart": "c12", "function": "h"},
    {"name": "ah_swap", "kind": "ah_map", "map": "swap"},
    {"name": "diagram_identity", "kind": "over_diagram", "map": "id", "charts": ["c12", "c12"],
     "downstairs": ["w1", "w2"]},
    {"name": "diagram_swap", "kind": "over_diagram", "map": "swap", "charts": ["c12", "c12"],
     "downstairs": ["w2", "w1"]}
  ]
})json";

// S^-1 J0 S with S = I + x1 E on [-0.5,0.5]^4; not integrable.
constexpr const char* kTwistedR4 = R"json({
  "name": "twisted_r4",
  "n": 2,
  "box": {"lo": [-0.5, -0.5, -0.5, -0.5], "hi": [0.5, 0.5, 0.5, 0.5]},
  "J": [["0", "-1", "-x1", "0"], ["1", "0", "0", "x1"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
  "functions": {
    "z2": "x3 + (0+1i)*x4",
    "z1": "x1 + (0+1i)*x2"
  },
  "charts": {
    "c2": {"functions": ["z2"]}
  },
  "defaults": {"grid": 7, "degree": 3},
  "tasks": [
    {"name": "acs", "kind": "check_acs"},
    {"name": "split", "kind": "split_type"},
    {"name": "integrable", "kind": "integrability", "expect": "fail"},
    {"name": "cr_z2", "kind": "cr_check", "function": "z2"},
    {"name": "cr_z1", "kind": "cr_check", "function": "z1", "expect": "fail"},
    {"name": "solve", "kind": "solve", "min_m": 1},
    {"name": "type", "kind": "spencer_type", "expect": "fail"},
    {"name": "type_lower_bound", "kind": "spencer_type", "min_m": 1},
    {"name": "independent_z2", "kind": "independence", "functions": ["z2"]},
    {"name": "chart_z2", "kind": "chart", "chart": "c2"}
  ]
})json";

const std::pair<const char*, const char*> kBuiltins[] = {
    {"std_c1", kStdC1}, {"std_c2", kStdC2}, {"twisted_r4", kTwistedR4}};

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kBuiltins) out.emplace_back(name);
  return out;
}

Scenario builtin_scenario(const std::string& name) {
  for (const auto& [key, text] : kBuiltins) {
    if (name == key) return parse_scenario(text);
  }
  throw ConfigurationError("no builtin scenario named " + name);
}

}  // namespace spencerkit
