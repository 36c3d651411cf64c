// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>

#include "spencerkit/charts.hpp"
#include "spencerkit/crsolve.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/pseudogroup.hpp"
#include "spencerkit/scenario.hpp"
#include "spencerkit/version.hpp"

namespace spencerkit {

bool RunResult::passed() const {
  return std::all_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.passed; });
}

bool RunResult::numerical_error() const {
  return std::any_of(tasks.begin(), tasks.end(),
                     [](const TaskResult& t) { return !t.passed && t.numerical_error; });
}

namespace {

constexpr std::size_t kMaxNotes = 12;
// Coefficients below this are rounding noise in fitted or solved polynomials.
constexpr double kDisplayCutoff = 1e-12;

std::string shown(const Polynomial& p, const std::string& prefix) {
  return p.pruned(kDisplayCutoff).to_string(prefix);
}

template <typename T>
const T& named(const std::vector<T>& items, const std::string& name) {
  for (const auto& item : items) {
    if (item.name == name) return item;
  }
  throw ConfigurationError("unknown name " + name);
}

void merge(Report& into, const Report& from) {
  for (const auto& m : from.metrics()) {
    if (m.comparison == Comparison::kInformational) {
      into.info(m.name, m.value);
    } else {
      into.check(m.name, m.value, m.comparison, m.tolerance_name, m.threshold);
    }
  }
  for (const auto& [name, value] : from.tolerances()) into.tolerance(name, value);
  for (const auto& n : from.notes()) into.note(n);
  if (from.errored()) into.fail("sub-report errored");
}

void add_notes(Report& r, const std::vector<std::string>& notes) {
  for (std::size_t i = 0; i < notes.size() && i < kMaxNotes; ++i) r.note(notes[i]);
  if (notes.size() > kMaxNotes) r.note(std::to_string(notes.size() - kMaxNotes) + " further notes omitted");
}

Box overlap(const std::vector<Box>& boxes) {
  Box out = boxes.front();
  for (std::size_t i = 1; i < boxes.size(); ++i) {
    const auto next = out.intersect(boxes[i]);
    if (!next) throw OverlapError("declared boxes do not overlap");
    out = *next;
  }
  return out;
}

class Context {
 public:
  Context(const Scenario& s, const RunOptions& opts)
      : s_(s), opts_(opts), acs_(std::make_shared<const ACStructure>(s.box, s.j)) {}

  const ACStructure& acs() const { return *acs_; }

  double tol(const TaskDecl& t, const std::string& name) const {
    for (const ToleranceList* list : {&opts_.tolerances, &t.tolerances, &s_.defaults.tolerances,
                                      &default_tolerances()}) {
      for (const auto& [key, value] : *list) {
        if (key == name) return value;
      }
    }
    throw ConfigurationError("unknown tolerance " + name);
  }

  int grid(const TaskDecl& t) const { return opts_.grid.value_or(t.grid.value_or(s_.defaults.grid)); }
  int degree(const TaskDecl& t) const {
    return opts_.degree.value_or(t.degree.value_or(s_.defaults.degree));
  }
  SampleGrid box_grid(const TaskDecl& t) const { return SampleGrid(s_.box, grid(t)); }

  ScalarField function(const std::string& name, const Box& box) const {
    return ScalarField(named(s_.functions, name).expr, box);
  }

  Box chart_box(const std::string& name) const { return named(s_.charts, name).box.value_or(s_.box); }

  const SpencerChart& chart(const TaskDecl& t, const std::string& name) {
    const int k = grid(t);
    const std::string key = name + "@" + std::to_string(k);
    const auto it = charts_.find(key);
    if (it != charts_.end()) return it->second;
    const ChartDecl& decl = named(s_.charts, name);
    const Box box = chart_box(name);
    std::vector<ScalarField> funcs;
    for (const auto& f : decl.functions) funcs.push_back(function(f, box));
    ChartTolerances tols;
    tols.cr_tol = tol(t, "tol_cr");
    tols.svd_rel_tol = tol(t, "svd_rel_tol");
    tols.det_tol = tol(t, "tol_chart_det");
    SpencerChart c = build_spencer_chart(acs_, std::move(funcs), SampleGrid(box, k), tols, name);
    return charts_.emplace(key, std::move(c)).first->second;
  }

  LocalMap map(const std::string& name) const {
    const MapDecl& decl = named(s_.maps, name);
    LocalMap m = LocalMap::polynomial(decl.name, decl.domain, decl.components);
    if (!decl.inverse.empty()) {
      const MapDecl& inv = named(s_.maps, decl.inverse);
      m = m.with_declared_inverse(LocalMap::polynomial(inv.name, inv.domain, inv.components));
    }
    return m;
  }

  PseudogroupTolerances pseudogroup_tols(const TaskDecl& t) const {
    PseudogroupTolerances tols;
    tols.dedup_tol = tol(t, "tol_dedup");
    tols.map_tol = tols.dedup_tol;
    return tols;
  }

  /// The declared family, closed under generate() when requested.
  PseudogroupFamily family(const TaskDecl& t, const SampleGrid& grid) const {
    const FamilyDecl& decl = named(s_.families, t.family);
    PseudogroupFamily fam;
    for (const auto& m : decl.members) fam.members.push_back(map(m));
    fam.depth = decl.depth;
    fam.dedup_tol = tol(t, "tol_dedup");
    fam.restriction_targets = decl.restrictions;
    for (const auto& g : decl.glue_tests) fam.glue_tests.push_back({map(g.map), g.cover});
    if (!decl.generate) return fam;
    GenerateOptions gen;
    gen.include_inverses = decl.include_inverses;
    gen.tols = pseudogroup_tols(t);
    return generate(fam, grid, gen);
  }

 private:
  const Scenario& s_;
  const RunOptions& opts_;
  std::shared_ptr<const ACStructure> acs_;
  std::map<std::string, SpencerChart> charts_;
};

FitOptions fit_options(const TaskDecl& t) {
  FitOptions fo;
  if (t.fit_degree) fo.fit_degree = *t.fit_degree;
  return fo;
}

Report run_task(Context& ctx, const Scenario& s, const TaskDecl& t) {
  const std::string& k = t.kind;
  Report r(t.name);
  if (k == "check_acs") {
    merge(r, check_acs(ctx.acs(), ctx.box_grid(t), ctx.tol(t, "tol_acs")));
  } else if (k == "split_type") {
    const SampleGrid grid = ctx.box_grid(t);
    const double tol = ctx.tol(t, "tol_split");
    double worst = 0.0;
    std::size_t degenerate = 0;
    std::size_t min_h = grid.size() > 0 ? static_cast<std::size_t>(s.n) : 0;
    std::size_t min_a = min_h;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      try {
        const TypeSplit split = split_type(ctx.acs(), grid.point(i), tol);
        worst = std::max(worst, split.residual);
        min_h = std::min(min_h, split.holomorphic.size());
        min_a = std::min(min_a, split.antiholomorphic.size());
      } catch (const DegenerateStructureError& e) {
        if (degenerate++ == 0) r.note(std::string("first degenerate point: ") + e.what());
        worst = std::max(worst, e.residual());
      }
    }
    r.check_at_most("split_residual", worst, "tol_split", tol);
    r.check_at_most("degenerate_points", static_cast<double>(degenerate), "max_degenerate_points", 0.0);
    r.info("holomorphic_dim", static_cast<double>(min_h));
    r.info("antiholomorphic_dim", static_cast<double>(min_a));
  } else if (k == "integrability") {
    merge(r, integrability_report(ctx.acs(), ctx.box_grid(t), ctx.tol(t, "tol_nijenhuis")));
  } else if (k == "cr_check") {
    const SampleGrid grid = ctx.box_grid(t);
    const ScalarField f = ctx.function(t.function, s.box);
    const double tol = ctx.tol(t, "tol_cr");
    r.check_at_most("cr_residual", cr_residual(ctx.acs(), f, grid), "tol_cr", tol);
    merge(r, cr_equations_check(ctx.acs(), f, grid, tol));
  } else if (k == "solve") {
    const SampleGrid grid = ctx.box_grid(t);
    const double rel = ctx.tol(t, "svd_rel_tol");
    const AHSolutionSet sol = solve_ah_polynomials(ctx.acs(), ctx.degree(t), grid, rel);
    double worst = 0.0;
    for (const auto& f : sol.basis) worst = std::max(worst, cr_residual(ctx.acs(), f, grid));
    r.info("dimension", static_cast<double>(sol.basis.size()));
    if (t.min_m) r.check("dimension_floor", static_cast<double>(sol.basis.size()), Comparison::kGreaterEqual, "min_m", *t.min_m);
    r.check_at_most("solution_residual", worst, "tol_solve", ctx.tol(t, "tol_solve"));
    r.info("independence_rank", sol.basis.empty() ? 0.0 : independence_rank(sol.basis, grid, rel));
    r.info("degree", sol.degree);
    r.info("threshold_used", sol.threshold_used);
    r.tolerance("svd_rel_tol", rel);
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < sol.basis.size(); ++i) {
      notes.push_back("f" + std::to_string(i + 1) + " = " + shown(sol.basis[i].expr, "x"));
    }
    add_notes(r, notes);
  } else if (k == "spencer_type") {
    const SampleGrid grid = ctx.box_grid(t);
    TypeTolerances tt;
    tt.svd_rel_tol = ctx.tol(t, "svd_rel_tol");
    const TypeEstimate est = estimate_spencer_type(ctx.acs(), grid, ctx.degree(t), tt);
    const int min_m = t.min_m.value_or(s.n);
    r.check("m", est.m, Comparison::kGreaterEqual, "min_m", min_m);
    r.info("degree", est.degree);
    r.info("candidates", static_cast<double>(est.candidates));
    if (est.m == s.n) {
      // m = n is only consistent with a vanishing Nijenhuis tensor.
      const double tol = ctx.tol(t, "tol_nijenhuis");
      const double nij = integrability_report(ctx.acs(), grid, tol).value("nijenhuis_max");
      r.check_at_most("integrability_anomaly", nij > tol ? 1.0 : 0.0, "max_anomalies", 0.0);
    }
    r.tolerance("svd_rel_tol", tt.svd_rel_tol);
    add_notes(r, est.notes);
  } else if (k == "independence") {
    const SampleGrid grid = ctx.box_grid(t);
    std::vector<ScalarField> funcs;
    for (const auto& f : t.functions) funcs.push_back(ctx.function(f, s.box));
    const double rel = ctx.tol(t, "svd_rel_tol");
    const RankEvidence ev = independence_evidence(funcs, grid, rel);
    r.check("rank", ev.rank, Comparison::kGreaterEqual, "required_rank", 2.0 * static_cast<double>(funcs.size()));
    r.info("rank_drop_points", static_cast<double>(ev.rank_drop_points));
    r.tolerance("svd_rel_tol", rel);
  } else if (k == "chart") {
    const SpencerChart& c = ctx.chart(t, t.chart);
    r.check("jacobian_certificate", c.jacobian_certificate, Comparison::kGreater, "tol_chart_det",
            ctx.tol(t, "tol_chart_det"));
    r.info("m", c.m());
    std::string pairs;
    for (int p : c.passive_pairs) pairs += (pairs.empty() ? "z" : ", z") + std::to_string(p + 1);
    r.note("passive coordinates: " + (pairs.empty() ? std::string("none") : pairs));
  } else if (k == "factorize") {
    const SpencerChart& c = ctx.chart(t, t.chart);
    const ScalarField h = ctx.function(t.function, c.box);
    const Factorization f = factorize(c, h, SampleGrid(c.box, ctx.grid(t)), fit_options(t));
    const double rel = f.scale > 0.0 ? f.residual / f.scale : f.residual;
    r.check_at_most("relative_residual", rel, "tol_factorize", ctx.tol(t, "tol_factorize"));
    r.info("residual", f.residual);
    r.info("scale", f.scale);
    r.info("fiber_variance", f.fiber_variance);
    r.info("fiber_clusters", static_cast<double>(f.fiber_clusters));
    r.info("condition", f.condition);
    r.info("fit_degree", fit_options(t).fit_degree);
    r.note("H = " + shown(f.holomorphic_part, "w"));
  } else if (k == "transition") {
    const SpencerChart& a = ctx.chart(t, t.charts[0]);
    const SpencerChart& b = ctx.chart(t, t.charts[1]);
    const SampleGrid grid(overlap({a.box, b.box}), ctx.grid(t));
    const TransitionMap tm = transition_map(a, b, grid, fit_options(t));
    r.check_at_most("holomorphy_residual", tm.holomorphy_residual, "tol_holomorphy", ctx.tol(t, "tol_holomorphy"));
    r.check_at_most("fit_residual", tm.fit_residual, "tol_transition_fit", ctx.tol(t, "tol_transition_fit"));
    r.info("overlap_points", static_cast<double>(tm.overlap_points));
    r.info("jacobian_min_det", tm.jacobian_min_det);
    r.info("condition", tm.condition);
    for (std::size_t i = 0; i < tm.phi.size(); ++i) {
      r.note("phi" + std::to_string(i + 1) + " = " + shown(tm.phi[i], "w"));
    }
  } else if (k == "cocycle") {
    const SpencerChart& a = ctx.chart(t, t.charts[0]);
    const SpencerChart& b = ctx.chart(t, t.charts[1]);
    const SpencerChart& c = ctx.chart(t, t.charts[2]);
    const SampleGrid grid(overlap({a.box, b.box, c.box}), ctx.grid(t));
    merge(r, cocycle_check(a, b, c, grid, ctx.tol(t, "tol_cocycle"), fit_options(t)));
    r.info("fit_degree", fit_options(t).fit_degree);
  } else if (k == "axioms") {
    const SampleGrid grid = ctx.box_grid(t);
    const PseudogroupFamily fam = ctx.family(t, grid);
    const AxiomReport ar = validate_axioms(fam, grid, ctx.pseudogroup_tols(t));
    merge(r, ar.summary());
    r.info("members", static_cast<double>(fam.members.size()));
    r.tolerance("tol_dedup", fam.dedup_tol);
    add_notes(r, fam.notes);
  } else if (k == "ah_map") {
    const LocalMap m = ctx.map(t.map);
    merge(r, check_ah_map(ctx.acs(), m, SampleGrid(m.domain(), ctx.grid(t)), ctx.tol(t, "tol_ah_map")));
  } else if (k == "ah_closure") {
    const SampleGrid grid = ctx.box_grid(t);
    const PseudogroupFamily fam = ctx.family(t, grid);
    const double tol = ctx.tol(t, "tol_ah_map");
    double worst = 0.0;
    std::size_t checked = 0;
    std::string worst_name;
    for (const auto& m : fam.members) {
      double defect = 0.0;
      try {
        defect = check_ah_map(ctx.acs(), m, grid, tol).value("ah_defect");
      } catch (const DomainError&) {
        continue;
      }
      ++checked;
      if (defect > worst || worst_name.empty()) {
        worst = std::max(worst, defect);
        worst_name = m.name();
      }
    }
    r.check_at_most("closure_ah_defect", worst, "tol_ah_map", tol);
    r.info("members", static_cast<double>(fam.members.size()));
    r.info("members_checked", static_cast<double>(checked));
    if (!worst_name.empty()) r.note("largest defect: " + worst_name);
    add_notes(r, fam.notes);
  } else if (k == "over_diagram") {
    const LocalMap up = ctx.map(t.map);
    const SpencerChart& a = ctx.chart(t, t.charts[0]);
    const SpencerChart& b = ctx.chart(t, t.charts[1]);
    const OverDiagram diag{up, a, b, t.downstairs,
                           SampleGrid(overlap({up.domain(), a.box}), ctx.grid(t))};
    merge(r, check_over_diagram(diag, ctx.tol(t, "tol_diagram")));
  } else {
    throw ConfigurationError("unknown task kind " + k);
  }
  return r;
}

}  // namespace

RunResult run(const Scenario& scenario, const RunOptions& options) {
  if (options.only_task &&
      std::none_of(scenario.tasks.begin(), scenario.tasks.end(),
                   [&](const TaskDecl& t) { return t.name == *options.only_task; })) {
    throw ConfigurationError("scenario has no task named " + *options.only_task);
  }
  for (const auto& [name, value] : options.tolerances) {
    const auto& known = default_tolerances();
    if (std::none_of(known.begin(), known.end(), [&](const auto& t) { return t.first == name; })) {
      throw ConfigurationError("unknown tolerance " + name);
    }
    if (!(value >= 0.0)) throw ConfigurationError("tolerance " + name + " must be >= 0");
  }
  if (options.grid && *options.grid < 2) throw ConfigurationError("grid needs at least 2 points per axis");
  if (options.degree && *options.degree < 1) throw ConfigurationError("degree must be at least 1");

  RunResult result;
  result.scenario = scenario.name;
  result.version = kVersion;
  Context ctx(scenario, options);
  for (const auto& t : scenario.tasks) {
    if (options.only_task && t.name != *options.only_task) continue;
    TaskResult tr;
    tr.name = t.name;
    tr.kind = t.kind;
    tr.expect_fail = t.expect_fail;
    const auto start = std::chrono::steady_clock::now();
    try {
      tr.report = run_task(ctx, scenario, t);
    } catch (const NumericalError& e) {
      tr.report = Report(t.name);
      tr.report.fail(std::string("numerical error: ") + e.what());
      tr.numerical_error = true;
    } catch (const Error& e) {
      tr.report = Report(t.name);
      tr.report.fail(std::string("error: ") + e.what());
    } catch (const std::exception& e) {
      tr.report = Report(t.name);
      tr.report.fail(std::string("internal error: ") + e.what());
      tr.numerical_error = true;
    }
    tr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = tr.report.passed();
    tr.passed = t.expect_fail ? !ok : ok;
    if (t.expect_fail) tr.report.note(ok ? "expected a failure but every check passed" : "failed as expected");
    result.tasks.push_back(std::move(tr));
  }
  return result;
}

}  // namespace spencerkit
