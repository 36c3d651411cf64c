// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/crsolve.hpp"

#include <algorithm>
#include <cmath>

#include "spencerkit/errors.hpp"
#include "spencerkit/numerics.hpp"

namespace spencerkit {

namespace {

const Complex kI(0.0, 1.0);

void require_grid_inside(const Box& box, const SampleGrid& grid, const char* what) {
  if (!box.contains(grid.box(), box.slack())) {
    throw DomainError(std::string("sample grid box is not contained in the ") + what);
  }
}

}  // namespace

ScalarField::ScalarField(Polynomial e, Box b, int degree_cap)
    : expr(std::move(e)), box(std::move(b)) {
  if (expr.num_vars() != static_cast<std::size_t>(box.dim())) {
    throw ConfigurationError("scalar field must be a polynomial in 2n variables");
  }
  if (expr.degree() > degree_cap) {
    throw ConfigurationError("scalar field degree " + std::to_string(expr.degree()) +
                             " exceeds cap " + std::to_string(degree_cap));
  }
}

ComplexVector ScalarField::gradient(std::span<const double> p) const {
  const int d = box.dim();
  ComplexVector g(d);
  for (int k = 0; k < d; ++k) g[k] = expr.derivative(k)(p);
  return g;
}

namespace {

// Gradients as polynomials, computed once per field.
std::vector<Polynomial> gradient_polys(const ScalarField& f) {
  std::vector<Polynomial> g;
  for (int k = 0; k < f.box.dim(); ++k) g.push_back(f.expr.derivative(k));
  return g;
}

ComplexVector eval_all(const std::vector<Polynomial>& polys, std::span<const double> p) {
  ComplexVector v(static_cast<Eigen::Index>(polys.size()));
  for (std::size_t k = 0; k < polys.size(); ++k) v[static_cast<Eigen::Index>(k)] = polys[k](p);
  return v;
}

}  // namespace

double cr_residual(const ACStructure& acs, const ScalarField& f, const SampleGrid& grid) {
  require_grid_inside(acs.box(), grid, "structure's box");
  require_grid_inside(f.box, grid, "function's box");
  const auto grad = gradient_polys(f);
  std::vector<double> per_point(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const ComplexVector df = eval_all(grad, grid.point(i));
    const ComplexMatrix jt = acs.value(grid.point(i)).transpose().cast<Complex>();
    per_point[i] = (jt * df - kI * df).cwiseAbs().maxCoeff();
  });
  double worst = 0.0;
  for (double v : per_point) worst = std::max(worst, v);
  return worst;
}

Report cr_equations_check(const ACStructure& acs, const ScalarField& f,
                          const SampleGrid& grid, double tol) {
  require_grid_inside(acs.box(), grid, "structure's box");
  require_grid_inside(f.box, grid, "function's box");
  const auto grad = gradient_polys(f);
  std::vector<double> du_res(grid.size());
  std::vector<double> dv_res(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const ComplexVector df = eval_all(grad, grid.point(i));
    const RealVector du = df.real();
    const RealVector dv = df.imag();
    const RealMatrix jt = acs.value(grid.point(i)).transpose();
    // J* du = -dv and J* dv = du.
    du_res[i] = (jt * du + dv).cwiseAbs().maxCoeff();
    dv_res[i] = (jt * dv - du).cwiseAbs().maxCoeff();
  });
  double du_worst = 0.0;
  double dv_worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    du_worst = std::max(du_worst, du_res[i]);
    dv_worst = std::max(dv_worst, dv_res[i]);
  }
  Report report("cr_equations");
  report.check_at_most("cr_du", du_worst, "tol_cr", tol);
  report.check_at_most("cr_dv", dv_worst, "tol_cr", tol);
  return report;
}

AHSolutionSet solve_ah_polynomials(const ACStructure& acs, int degree, const SampleGrid& grid,
                                   double svd_rel_tol) {
  require_grid_inside(acs.box(), grid, "structure's box");
  if (degree < 1) throw ConfigurationError("solver degree must be at least 1");
  const int d = acs.dim();
  // The constant monomial has zero gradient and is left out of the ansatz.
  const auto monomials = monomials_up_to(static_cast<std::size_t>(d), degree, false);
  const std::size_t unknowns = monomials.size();
  if (grid.size() < unknowns + 1) {
    throw ConfigurationError("grid has " + std::to_string(grid.size()) +
                             " points but the degree-" + std::to_string(degree) +
                             " ansatz has " + std::to_string(unknowns + 1) + " monomials");
  }

  // Row (p, k): sum_a c_a [ sum_j d_j m_a(p) J_jk(p) - i d_k m_a(p) ] = 0.
  ComplexMatrix system(static_cast<Eigen::Index>(grid.size()) * d,
                       static_cast<Eigen::Index>(unknowns));
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto p = grid.point(i);
    const RealMatrix j = acs.value(p);
    RealMatrix powers(d, degree + 1);
    for (int v = 0; v < d; ++v) {
      powers(v, 0) = 1.0;
      for (int e = 1; e <= degree; ++e) powers(v, e) = powers(v, e - 1) * p[v];
    }
    RealVector grad(d);
    for (std::size_t a = 0; a < unknowns; ++a) {
      const auto& e = monomials[a];
      for (int q = 0; q < d; ++q) {
        if (e[q] == 0) {
          grad[q] = 0.0;
          continue;
        }
        double value = e[q];
        for (int v = 0; v < d; ++v) value *= powers(v, v == q ? e[v] - 1 : e[v]);
        grad[q] = value;
      }
      const RealVector jt_grad = j.transpose() * grad;
      for (int k = 0; k < d; ++k) {
        system(static_cast<Eigen::Index>(i) * d + k, static_cast<Eigen::Index>(a)) =
            Complex(jt_grad[k], -grad[k]);
      }
    }
  });

  const Nullspace ns = nullspace(system, svd_rel_tol);
  AHSolutionSet out;
  out.singular_values = ns.singular_values;
  out.threshold_used = ns.threshold;
  out.degree = degree;
  if (ns.basis.cols() == 0) return out;

  const ComplexMatrix rows = canonical_row_basis(ns.basis.transpose(), 1e-8);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Polynomial f(static_cast<std::size_t>(d));
    for (std::size_t a = 0; a < unknowns; ++a) {
      f.add_term(monomials[a], rows(r, static_cast<Eigen::Index>(a)));
    }
    out.basis.emplace_back(std::move(f), acs.box(), std::max(degree, kDefaultDegreeCap));
  }
  return out;
}

RealMatrix real_jacobian(std::span<const ScalarField> funcs, std::span<const double> p) {
  const int d = static_cast<int>(p.size());
  RealMatrix jac(2 * static_cast<Eigen::Index>(funcs.size()), d);
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const ComplexVector g = funcs[i].gradient(p);
    jac.row(2 * static_cast<Eigen::Index>(i)) = g.real().transpose();
    jac.row(2 * static_cast<Eigen::Index>(i) + 1) = g.imag().transpose();
  }
  return jac;
}

RankEvidence independence_evidence(std::span<const ScalarField> funcs, const SampleGrid& grid,
                                   double svd_rel_tol) {
  if (funcs.empty()) throw ConfigurationError("independence check needs at least one function");
  for (const auto& f : funcs) require_grid_inside(f.box, grid, "function's box");
  std::vector<std::vector<double>> svals(grid.size());
  std::vector<int> ranks(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    svals[i] = singular_values(real_jacobian(funcs, grid.point(i)));
    ranks[i] = numerical_rank(svals[i], svd_rel_tol);
  });
  RankEvidence ev;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (ranks[i] > ev.rank || i == 0) {
      ev.rank = ranks[i];
      ev.best_point = i;
    }
  }
  if (!svals.empty()) ev.singular_values = svals[ev.best_point];
  ev.rank_drop_points = static_cast<std::size_t>(
      std::count_if(ranks.begin(), ranks.end(), [&](int r) { return r < ev.rank; }));
  return ev;
}

int independence_rank(std::span<const ScalarField> funcs, const SampleGrid& grid,
                      double svd_rel_tol) {
  return independence_evidence(funcs, grid, svd_rel_tol).rank;
}

TypeEstimate estimate_spencer_type(const ACStructure& acs, const SampleGrid& grid, int degree,
                                   const TypeTolerances& tols) {
  const AHSolutionSet solutions = solve_ah_polynomials(acs, degree, grid, tols.svd_rel_tol);
  TypeEstimate est;
  est.degree = degree;
  est.points_per_axis = grid.points_per_axis();
  est.svd_rel_tol = tols.svd_rel_tol;
  est.candidates = solutions.basis.size();

  std::vector<ScalarField> trial;
  for (const auto& candidate : solutions.basis) {
    trial = est.selected;
    trial.push_back(candidate);
    const RankEvidence ev = independence_evidence(trial, grid, tols.svd_rel_tol);
    if (ev.rank == 2 * static_cast<int>(trial.size())) {
      est.selected = std::move(trial);
      est.jacobian_rank_evidence.push_back(ev.singular_values);
      if (ev.rank_drop_points > 0) {
        est.notes.push_back("rank drops below " + std::to_string(ev.rank) + " at " +
                            std::to_string(ev.rank_drop_points) + " grid points");
      }
    }
  }
  est.m = static_cast<int>(est.selected.size());
  if (est.m > acs.n()) {
    est.notes.push_back("numerical anomaly: " + std::to_string(est.m) +
                        " independent functions exceed n = " + std::to_string(acs.n()));
    est.m = acs.n();
    est.selected.resize(static_cast<std::size_t>(acs.n()));
  }
  est.notes.push_back("m is a lower bound: only polynomial functions of degree <= " +
                      std::to_string(degree) + " are searched");
  return est;
}

}  // namespace spencerkit
