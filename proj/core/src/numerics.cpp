// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spencerkit/errors.hpp"

namespace spencerkit {

int numerical_rank(std::span<const double> svals, double rel_tol) {
  if (svals.empty() || !(svals.front() > 0.0)) return 0;
  const double cutoff = rel_tol * svals.front();
  return static_cast<int>(
      std::count_if(svals.begin(), svals.end(), [cutoff](double s) { return s > cutoff; }));
}

std::vector<double> singular_values(const RealMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

Nullspace nullspace(const ComplexMatrix& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  Nullspace out;
  if (cols == 0) return out;
  if (!a.allFinite()) throw NumericalError("system matrix contains non-finite entries");

  ComplexMatrix r;
  if (a.rows() > cols) {
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    r = a;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  // Fewer rows than unknowns: the missing singular values are zero.
  out.singular_values.resize(static_cast<std::size_t>(cols), 0.0);
  if (!std::all_of(out.singular_values.begin(), out.singular_values.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw NumericalError("SVD produced non-finite singular values");
  }
  const double smax = out.singular_values.front();
  out.threshold = rel_tol * smax;
  const int rank = numerical_rank(out.singular_values, rel_tol);
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

ComplexMatrix canonical_row_basis(const ComplexMatrix& rows, double pivot_tol) {
  ComplexMatrix m = rows;
  const Eigen::Index nrows = m.rows();
  const Eigen::Index ncols = m.cols();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) scale = std::max(scale, std::abs(m.data()[i]));
  if (scale == 0.0) return ComplexMatrix(0, ncols);
  const double tol = pivot_tol * scale;

  Eigen::Index pivot_row = 0;
  for (Eigen::Index c = 0; c < ncols && pivot_row < nrows; ++c) {
    Eigen::Index best = pivot_row;
    double best_mag = std::abs(m(pivot_row, c));
    for (Eigen::Index r = pivot_row + 1; r < nrows; ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag <= tol) continue;
    m.row(pivot_row).swap(m.row(best));
    m.row(pivot_row) /= m(pivot_row, c);
    m(pivot_row, c) = 1.0;
    for (Eigen::Index r = 0; r < nrows; ++r) {
      if (r == pivot_row) continue;
      const Complex factor = m(r, c);
      if (factor == Complex{}) continue;
      m.row(r) -= factor * m.row(pivot_row);
      m(r, c) = 0.0;
    }
    ++pivot_row;
  }
  return m.topRows(pivot_row);
}

LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& b,
                                         double max_condition) {
  if (a.rows() != b.rows()) throw ConfigurationError("least squares: row mismatch");
  if (a.rows() < a.cols()) {
    throw FitError("least squares: fewer samples (" + std::to_string(a.rows()) +
                       ") than unknowns (" + std::to_string(a.cols()) + ")",
                   INFINITY);
  }
  const Eigen::Index cols = a.cols();
  Eigen::VectorXd col_scale(cols);
  ComplexMatrix scaled = a;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double mx = a.col(j).cwiseAbs().maxCoeff();
    col_scale[j] = mx > 0.0 ? 1.0 / mx : 1.0;
    scaled.col(j) *= col_scale[j];
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(scaled);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const ComplexMatrix qtb = (qr.householderQ().adjoint() * b).topRows(cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  const double condition = smin > 0.0 ? s[0] / smin : INFINITY;
  if (!(condition <= max_condition)) {
    throw FitError("least squares: ill-conditioned sample cloud (condition " +
                       format_double(condition) + ")",
                   condition);
  }
  LeastSquaresSolution out;
  out.coefficients = svd.solve(qtb);
  for (Eigen::Index j = 0; j < cols; ++j) out.coefficients.row(j) *= col_scale[j];
  out.condition = condition;
  return out;
}

ComplexMatrix monomial_design(std::span<const ComplexVector> points,
                              const std::vector<Exponents>& monomials) {
  ComplexMatrix a(static_cast<Eigen::Index>(points.size()),
                  static_cast<Eigen::Index>(monomials.size()));
  int max_exp = 0;
  for (const auto& e : monomials) {
    for (int v : e) max_exp = std::max(max_exp, v);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& w = points[i];
    const Eigen::Index nv = w.size();
    ComplexMatrix powers(nv, max_exp + 1);
    for (Eigen::Index v = 0; v < nv; ++v) {
      powers(v, 0) = 1.0;
      for (int k = 1; k <= max_exp; ++k) powers(v, k) = powers(v, k - 1) * w[v];
    }
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      Complex value = 1.0;
      for (Eigen::Index v = 0; v < nv; ++v) value *= powers(v, monomials[j][v]);
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    }
  }
  return a;
}

}  // namespace spencerkit
