// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/charts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spencerkit/errors.hpp"
#include "spencerkit/numerics.hpp"

namespace spencerkit {

ComplexVector SpencerChart::project(std::span<const double> p) const {
  ComplexVector w(m());
  for (int j = 0; j < m(); ++j) w[j] = ah_coords[static_cast<std::size_t>(j)](p);
  return w;
}

namespace {

RealMatrix stacked_jacobian(std::span<const ScalarField> funcs, std::span<const int> pairs,
                            std::span<const double> p) {
  const int d = static_cast<int>(p.size());
  const RealMatrix top = real_jacobian(funcs, p);
  RealMatrix jac = RealMatrix::Zero(top.rows() + 2 * static_cast<Eigen::Index>(pairs.size()), d);
  jac.topRows(top.rows()) = top;
  Eigen::Index row = top.rows();
  for (int j : pairs) {
    jac(row++, 2 * j) = 1.0;
    jac(row++, 2 * j + 1) = 1.0;
  }
  return jac;
}

// sqrt(det(M M^T)) = product of singular values; |det| for square M.
double volume(const RealMatrix& m) {
  if (m.rows() == 0) return 1.0;
  double v = 1.0;
  for (double s : singular_values(m)) v *= s;
  return v;
}

}  // namespace

RealMatrix SpencerChart::full_jacobian(std::span<const double> p) const {
  return stacked_jacobian(ah_coords, passive_pairs, p);
}

SpencerChart build_spencer_chart(std::shared_ptr<const ACStructure> acs,
                                 std::vector<ScalarField> ah_funcs, const SampleGrid& grid,
                                 const ChartTolerances& tols, std::string name) {
  if (!acs) throw ConfigurationError("chart needs a structure");
  const Box& u = grid.box();
  if (!acs->box().contains(u, acs->box().slack())) {
    throw DomainError("chart box is not inside the structure's box");
  }
  const int n = acs->n();
  const int m = static_cast<int>(ah_funcs.size());
  if (m > n) throw IndependenceError("more than n almost holomorphic coordinates");
  for (auto& f : ah_funcs) {
    if (!f.box.contains(u, f.box.slack())) throw DomainError("coordinate function box misses U");
    f = ScalarField(f.expr, u, std::max(kDefaultDegreeCap, f.expr.degree()));
  }

  if (tols.verify) {
    for (std::size_t i = 0; i < ah_funcs.size(); ++i) {
      const double r = cr_residual(*acs, ah_funcs[i], grid);
      if (!(r <= tols.cr_tol)) {
        throw ChartError("coordinate " + std::to_string(i + 1) +
                             " is not almost holomorphic (CR residual " + format_double(r) + ")",
                         std::numeric_limits<double>::quiet_NaN());
      }
    }
    if (m > 0) {
      const int rank = independence_rank(ah_funcs, grid, tols.svd_rel_tol);
      if (rank != 2 * m) {
        throw IndependenceError("coordinates are functionally dependent: Jacobian rank " +
                                std::to_string(rank) + " < " + std::to_string(2 * m));
      }
    }
  }

  // Greedy passive selection maximizing the grid-minimum volume.
  std::vector<int> chosen;
  std::vector<double> vol(grid.size());
  double best_min = 0.0;
  for (int slot = 0; slot < n - m; ++slot) {
    int best_pair = -1;
    best_min = -1.0;
    for (int pair = 0; pair < n; ++pair) {
      if (std::find(chosen.begin(), chosen.end(), pair) != chosen.end()) continue;
      std::vector<int> trial = chosen;
      trial.push_back(pair);
      parallel_for(grid.size(), [&](std::size_t i) {
        vol[i] = volume(stacked_jacobian(ah_funcs, trial, grid.point(i)));
      });
      const double mn = *std::min_element(vol.begin(), vol.end());
      if (mn > best_min) {
        best_min = mn;
        best_pair = pair;
      }
    }
    chosen.push_back(best_pair);
  }

  std::vector<double> det(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    det[i] = stacked_jacobian(ah_funcs, chosen, grid.point(i)).determinant();
  });
  double min_abs = std::numeric_limits<double>::infinity();
  for (double v : det) min_abs = std::min(min_abs, std::abs(v));
  if (!(min_abs > tols.det_tol)) {
    throw ChartError("no passive selection gives a nondegenerate chart (best min |det| " +
                         format_double(min_abs) + ")",
                     min_abs);
  }

  SpencerChart chart;
  chart.name = std::move(name);
  chart.box = u;
  chart.acs = std::move(acs);
  chart.ah_coords = std::move(ah_funcs);
  std::sort(chosen.begin(), chosen.end());
  chart.passive_pairs = std::move(chosen);
  chart.jacobian_certificate = min_abs;
  return chart;
}

ProjectedCloud project(const SpencerChart& chart, const SampleGrid& grid) {
  ProjectedCloud cloud;
  cloud.chart = chart.name;
  for (std::size_t i : grid.indices_in(chart.box)) {
    cloud.sources.push_back(grid[i]);
    cloud.images.push_back(chart.project(grid.point(i)));
  }
  return cloud;
}

namespace {

Polynomial polynomial_from(const std::vector<Exponents>& monomials, const ComplexMatrix& coef,
                           Eigen::Index column, std::size_t num_vars) {
  Polynomial p(num_vars);
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    p.add_term(monomials[j], coef(static_cast<Eigen::Index>(j), column));
  }
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Factorization factorize(const SpencerChart& chart, const ScalarField& h, const SampleGrid& grid,
                        const FitOptions& options) {
  if (!h.box.contains(chart.box, h.box.slack())) {
    throw DomainError("function box does not cover the chart box");
  }
  const ProjectedCloud cloud = project(chart, grid);
  const std::size_t count = cloud.images.size();
  if (count == 0) throw OverlapError("no grid points inside the chart box");
  const std::size_t m = static_cast<std::size_t>(chart.m());

  ComplexMatrix values(static_cast<Eigen::Index>(count), 1);
  for (std::size_t i = 0; i < count; ++i) {
    values(static_cast<Eigen::Index>(i), 0) = h(as_span(cloud.sources[i]));
  }

  Factorization out;
  out.scale = max_abs(values);

  // Fibers: greedy clustering against the first member of each cluster.
  const double cluster_tol = options.cluster_tol_rel * chart.box.diameter();
  std::vector<std::size_t> representative;
  std::vector<std::size_t> cluster_size;
  std::vector<double> spread;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t c = 0;
    for (; c < representative.size(); ++c) {
      const auto diff = cloud.images[i] - cloud.images[representative[c]];
      if (m == 0 || diff.cwiseAbs().maxCoeff() <= cluster_tol) break;
    }
    if (c == representative.size()) {
      representative.push_back(i);
      cluster_size.push_back(1);
      spread.push_back(0.0);
    } else {
      ++cluster_size[c];
      spread[c] = std::max(spread[c], std::abs(values(static_cast<Eigen::Index>(i), 0) -
                                               values(static_cast<Eigen::Index>(representative[c]), 0)));
    }
  }
  for (std::size_t c = 0; c < representative.size(); ++c) {
    if (cluster_size[c] < 2) continue;
    ++out.fiber_clusters;
    out.fiber_variance = std::max(out.fiber_variance, spread[c]);
  }

  const auto monomials = monomials_up_to(m, options.fit_degree);
  const ComplexMatrix design = monomial_design(cloud.images, monomials);
  const LeastSquaresSolution fit = solve_least_squares(design, values, options.max_condition);
  out.holomorphic_part = polynomial_from(monomials, fit.coefficients, 0, m);
  out.residual = max_abs(design * fit.coefficients - values);
  out.condition = fit.condition;
  return out;
}

ComplexVector TransitionMap::apply(const ComplexVector& w) const {
  const std::span<const Complex> in(w.data(), static_cast<std::size_t>(w.size()));
  ComplexVector out(static_cast<Eigen::Index>(phi.size()));
  for (std::size_t j = 0; j < phi.size(); ++j) out[static_cast<Eigen::Index>(j)] = phi[j].evaluate(in);
  return out;
}

std::vector<Polynomial> identity_map(int m) {
  std::vector<Polynomial> id;
  for (int j = 0; j < m; ++j) id.push_back(Polynomial::variable(static_cast<std::size_t>(m), j));
  return id;
}

namespace {

void require_compatible(const SpencerChart& a, const SpencerChart& b) {
  if (!a.acs || !b.acs || !(a.acs == b.acs || *a.acs == *b.acs)) {
    throw ConfigurationError("charts " + a.name + " and " + b.name +
                             " are built on different structures");
  }
  if (a.m() != b.m()) throw ConfigurationError("charts have different type m");
}

TransitionMap fit_transition(const SpencerChart& a, const SpencerChart& b,
                             std::span<const RealVector> points, const FitOptions& options) {
  require_compatible(a, b);
  if (points.empty()) throw OverlapError("charts " + a.name + " and " + b.name + " do not overlap");
  const std::size_t m = static_cast<std::size_t>(a.m());
  const auto count = static_cast<Eigen::Index>(points.size());

  std::vector<ComplexVector> wa;
  ComplexMatrix wb(count, static_cast<Eigen::Index>(m));
  std::vector<ComplexVector> wa_two_sided;
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto p = as_span(points[static_cast<std::size_t>(i)]);
    ComplexVector w = a.project(p);
    wb.row(i) = b.project(p).transpose();
    ComplexVector both(2 * static_cast<Eigen::Index>(m));
    both << w, w.conjugate();
    wa_two_sided.push_back(std::move(both));
    wa.push_back(std::move(w));
  }

  TransitionMap t;
  t.source = a.name;
  t.target = b.name;
  t.overlap_points = points.size();

  const auto holo = monomials_up_to(m, options.fit_degree);
  const ComplexMatrix design = monomial_design(wa, holo);
  const LeastSquaresSolution fit = solve_least_squares(design, wb, options.max_condition);
  for (std::size_t j = 0; j < m; ++j) {
    t.phi.push_back(polynomial_from(holo, fit.coefficients, static_cast<Eigen::Index>(j), m));
  }
  t.fit_residual = max_abs(design * fit.coefficients - wb);
  t.condition = fit.condition;

  const auto full = monomials_up_to(2 * m, options.fit_degree);
  const ComplexMatrix design2 = monomial_design(wa_two_sided, full);
  const LeastSquaresSolution fit2 = solve_least_squares(design2, wb, options.max_condition);
  for (std::size_t j = 0; j < m; ++j) {
    t.two_sided.push_back(
        polynomial_from(full, fit2.coefficients, static_cast<Eigen::Index>(j), 2 * m));
  }
  t.two_sided_residual = max_abs(design2 * fit2.coefficients - wb);
  for (std::size_t k = 0; k < full.size(); ++k) {
    const bool has_conjugate =
        std::any_of(full[k].begin() + static_cast<std::ptrdiff_t>(m), full[k].end(),
                    [](int e) { return e > 0; });
    if (!has_conjugate) continue;
    t.holomorphy_residual =
        std::max(t.holomorphy_residual, fit2.coefficients.row(static_cast<Eigen::Index>(k))
                                            .cwiseAbs()
                                            .maxCoeff());
  }

  // Complex Jacobian determinant of phi over the cloud.
  std::vector<std::vector<Polynomial>> dphi(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) dphi[j].push_back(t.phi[j].derivative(k));
  }
  t.jacobian_min_det = m == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  for (const auto& w : wa) {
    const std::span<const Complex> in(w.data(), m);
    ComplexMatrix jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = dphi[j][k].evaluate(in);
      }
    }
    if (m > 0) t.jacobian_min_det = std::min(t.jacobian_min_det, std::abs(jac.determinant()));
  }
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (std::size_t k = i + 1; k < wa.size(); ++k) {
      t.cloud_diameter = std::max(t.cloud_diameter, (wa[i] - wa[k]).norm());
    }
  }
  return t;
}

std::vector<RealVector> points_in(const SampleGrid& grid, std::span<const Box* const> boxes) {
  std::vector<RealVector> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool inside = true;
    for (const Box* b : boxes) inside = inside && b->contains(grid[i], b->slack());
    if (inside) pts.push_back(grid[i]);
  }
  return pts;
}

}  // namespace

TransitionMap transition_map(const SpencerChart& a, const SpencerChart& b,
                             const SampleGrid& grid, const FitOptions& options) {
  const Box* boxes[] = {&a.box, &b.box};
  return fit_transition(a, b, points_in(grid, boxes), options);
}

double cocycle_residual(const TransitionMap& ab, const TransitionMap& bc,
                        const TransitionMap& ac, std::span<const ComplexVector> source_images) {
  double worst = 0.0;
  for (const auto& w : source_images) {
    const ComplexVector lhs = bc.apply(ab.apply(w));
    const ComplexVector rhs = ac.apply(w);
    if (lhs.size() > 0) worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

Report cocycle_check(const SpencerChart& a, const SpencerChart& b, const SpencerChart& c,
                     const SampleGrid& grid, double tol, const FitOptions& options) {
  const Box* boxes[] = {&a.box, &b.box, &c.box};
  const auto pts = points_in(grid, boxes);
  if (pts.empty()) throw OverlapError("charts have no common triple overlap on the grid");
  const TransitionMap ab = fit_transition(a, b, pts, options);
  const TransitionMap bc = fit_transition(b, c, pts, options);
  const TransitionMap ac = fit_transition(a, c, pts, options);
  std::vector<ComplexVector> images;
  images.reserve(pts.size());
  for (const auto& p : pts) images.push_back(a.project(as_span(p)));

  Report report("cocycle");
  report.check_at_most("cocycle_residual", cocycle_residual(ab, bc, ac, images), "tol_cocycle", tol);
  report.info("fit_residual_ab", ab.fit_residual);
  report.info("fit_residual_bc", bc.fit_residual);
  report.info("fit_residual_ac", ac.fit_residual);
  report.info("triple_overlap_points", static_cast<double>(pts.size()));
  report.tolerance("fit_degree", options.fit_degree);
  return report;
}

}  // namespace spencerkit
