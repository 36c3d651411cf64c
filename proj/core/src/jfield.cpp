// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/jfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spencerkit/errors.hpp"
#include "spencerkit/numerics.hpp"

namespace spencerkit {

namespace {

void require_inside(const Box& box, std::span<const double> p) {
  if (!box.contains(p, box.slack())) throw DomainError("point outside the structure's box");
}

void require_grid_inside(const Box& box, const SampleGrid& grid) {
  if (!box.contains(grid.box(), box.slack())) {
    throw DomainError("sample grid box is not contained in the structure's box");
  }
}

std::vector<Polynomial> constant_matrix(int dim, const RealMatrix& m) {
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(dim * dim));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) out.push_back(Polynomial::constant(dim, m(r, c)));
  }
  return out;
}

RealMatrix standard_matrix(int n) {
  RealMatrix j0 = RealMatrix::Zero(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) {
    j0(2 * b, 2 * b + 1) = -1.0;
    j0(2 * b + 1, 2 * b) = 1.0;
  }
  return j0;
}

std::vector<Polynomial> multiply(int dim, const std::vector<Polynomial>& a,
                                 const std::vector<Polynomial>& b) {
  std::vector<Polynomial> c(static_cast<std::size_t>(dim * dim), Polynomial(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) c[i * dim + j] += a[i * dim + k] * b[k * dim + j];
    }
  }
  return c;
}

}  // namespace

ACStructure::ACStructure(Box box, std::vector<Polynomial> entries)
    : box_(std::move(box)), entries_(std::move(entries)) {
  const int d = dim();
  if (entries_.size() != static_cast<std::size_t>(d * d)) {
    throw ConfigurationError("J needs (2n)^2 entries");
  }
  for (const auto& e : entries_) {
    if (e.num_vars() != static_cast<std::size_t>(d)) {
      throw ConfigurationError("J entries must be polynomials in 2n variables");
    }
    if (!e.is_real()) throw ConfigurationError("J entries must have real coefficients");
  }
  derivatives_.reserve(static_cast<std::size_t>(d * d * d));
  for (int axis = 0; axis < d; ++axis) {
    for (const auto& e : entries_) derivatives_.push_back(e.derivative(axis));
  }
}

RealMatrix ACStructure::value(std::span<const double> p) const {
  const int d = dim();
  RealMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = entries_[r * d + c](p).real();
  }
  return m;
}

RealMatrix ACStructure::derivative(std::span<const double> p, int axis) const {
  const int d = dim();
  if (axis < 0 || axis >= d) throw ConfigurationError("axis out of range");
  RealMatrix m(d, d);
  const std::size_t base = static_cast<std::size_t>(axis * d * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = derivatives_[base + r * d + c](p).real();
  }
  return m;
}

ACStructure standard_structure(const Box& box) {
  return ACStructure(box, constant_matrix(box.dim(), standard_matrix(box.n())));
}

ACStructure conjugated_structure(const Box& box, const std::vector<Polynomial>& s,
                                 const std::vector<Polynomial>& s_inverse) {
  const int d = box.dim();
  const auto j0 = constant_matrix(d, standard_matrix(box.n()));
  return ACStructure(box, multiply(d, multiply(d, s_inverse, j0), s));
}

ACStructure twisted_r4() {
  constexpr int n = 2;
  constexpr int d = 2 * n;
  const Box box = Box::cube(n, -0.5, 0.5);
  const Polynomial x1 = Polynomial::variable(d, 0);
  std::vector<Polynomial> s = constant_matrix(d, RealMatrix::Identity(d, d));
  std::vector<Polynomial> s_inv = s;
  // E = e_2 e_3^T is nilpotent, so (I + x1 E)^-1 = I - x1 E.
  s[1 * d + 2] += x1;
  s_inv[1 * d + 2] -= x1;
  return conjugated_structure(box, s, s_inv);
}

RealMatrix eval_j(const ACStructure& acs, std::span<const double> p) {
  require_inside(acs.box(), p);
  return acs.value(p);
}

Report check_acs(const ACStructure& acs, const SampleGrid& grid, double tol) {
  require_grid_inside(acs.box(), grid);
  const int d = acs.dim();
  std::vector<double> defect(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const RealMatrix j = acs.value(grid.point(i));
    defect[i] = (j * j + RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  });
  double worst = 0.0;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < defect.size(); ++i) {
    if (defect[i] > worst || std::isnan(defect[i])) {
      worst = defect[i];
      worst_index = i;
    }
  }
  Report report("check_acs");
  report.check_at_most("acs_defect", worst, "tol_acs", tol);
  report.info("grid_points", static_cast<double>(grid.size()));
  if (worst > tol) report.note("largest J^2 + I defect at grid point " + std::to_string(worst_index));
  return report;
}

ComplexVector pullback(const ACStructure& acs, const ComplexVector& omega,
                       std::span<const double> p) {
  if (omega.size() != acs.dim()) throw ConfigurationError("one-form must have 2n components");
  const RealMatrix j = eval_j(acs, p);
  return j.transpose().cast<Complex>() * omega;
}

namespace {

ComplexVector normalize_covector(ComplexVector w) {
  const double mx = w.cwiseAbs().maxCoeff();
  const double tiny = 1e-12 * mx;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (std::abs(w[k]) > tiny) {
      w *= std::conj(w[k]) / std::abs(w[k]);
      w[k] = std::abs(w[k]);  // exactly real
      break;
    }
  }
  return w / w.cwiseAbs().maxCoeff();
}

}  // namespace

TypeSplit split_type(const ACStructure& acs, std::span<const double> p, double tol) {
  const int d = acs.dim();
  const ComplexMatrix jt = eval_j(acs, p).transpose().cast<Complex>();
  const Complex i(0.0, 1.0);
  const ComplexMatrix projector =
      0.5 * (ComplexMatrix::Identity(d, d) - i * jt);  // projects onto J^T w = i w
  const ComplexMatrix rows = canonical_row_basis(projector.transpose(), 1e-6);

  TypeSplit split;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    ComplexVector w = normalize_covector(rows.row(r).transpose());
    split.residual = std::max(split.residual, (jt * w - i * w).cwiseAbs().maxCoeff());
    split.antiholomorphic.push_back(w.conjugate());
    split.holomorphic.push_back(std::move(w));
  }
  if (rows.rows() != acs.n()) {
    throw DegenerateStructureError("(1,0) eigenspace has dimension " +
                                       std::to_string(rows.rows()) + ", expected " +
                                       std::to_string(acs.n()),
                                   split.residual);
  }
  if (!(split.residual <= tol)) {
    throw DegenerateStructureError(
        "eigen-equation defect " + format_double(split.residual) + " exceeds tolerance",
        split.residual);
  }
  return split;
}

RealVector nijenhuis(const ACStructure& acs, std::span<const double> p, int a, int b) {
  const int d = acs.dim();
  if (a < 0 || b < 0 || a >= d || b >= d) throw ConfigurationError("axis out of range");
  require_inside(acs.box(), p);
  if (a == b) return RealVector::Zero(d);
  if (a > b) return -nijenhuis(acs, p, b, a);

  const RealMatrix j = acs.value(p);
  std::vector<RealMatrix> dj;
  dj.reserve(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) dj.push_back(acs.derivative(p, axis));

  // [J d_a, J d_b]^k = sum_j J_ja d_j J_kb - J_jb d_j J_ka
  RealVector bracket = RealVector::Zero(d);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int q = 0; q < d; ++q) s += j(q, a) * dj[q](k, b) - j(q, b) * dj[q](k, a);
    bracket[k] = s;
  }
  // [J d_a, d_b] = -d_b(J d_a), [d_a, J d_b] = d_a(J d_b); [d_a, d_b] = 0.
  const RealVector t_ab = -dj[b].col(a);
  const RealVector t_ba = dj[a].col(b);
  return bracket - j * t_ab - j * t_ba;
}

Report integrability_report(const ACStructure& acs, const SampleGrid& grid, double tol) {
  require_grid_inside(acs.box(), grid);
  const int d = acs.dim();
  std::vector<double> worst_at(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    double w = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        w = std::max(w, nijenhuis(acs, grid.point(i), a, b).cwiseAbs().maxCoeff());
      }
    }
    worst_at[i] = w;
  });
  const double worst = worst_at.empty() ? 0.0 : *std::max_element(worst_at.begin(), worst_at.end());
  Report report("integrability");
  report.check_at_most("nijenhuis_max", worst, "tol_nijenhuis", tol);
  report.info("grid_points", static_cast<double>(grid.size()));
  report.note(worst <= tol ? "Nijenhuis tensor vanishes on the grid (integrable at sampled scale)"
                           : "Nijenhuis tensor nonzero: structure is not integrable");
  return report;
}

}  // namespace spencerkit
