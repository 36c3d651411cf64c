// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_NUMERICS_HPP_
#define SPENCERKIT_NUMERICS_HPP_

#include <span>
#include <vector>

#include "spencerkit/box.hpp"
#include "spencerkit/polynomial.hpp"

namespace spencerkit {

/// Number of singular values strictly above rel_tol * max(svals).
/// Singular values must be sorted in decreasing order.
int numerical_rank(std::span<const double> svals, double rel_tol);

std::vector<double> singular_values(const RealMatrix& m);

struct Nullspace {
  /// Orthonormal columns spanning the numerical nullspace.
  ComplexMatrix basis;
  /// All singular values of the system, decreasing.
  std::vector<double> singular_values;
  double threshold = 0.0;
};

/// Nullspace of a tall complex matrix by Householder QR followed by an SVD
/// of the square triangular factor. Columns with sigma <= rel_tol * sigma_max
/// are kept; when sigma_max is zero the whole space is returned.
Nullspace nullspace(const ComplexMatrix& a, double rel_tol);

/// Reduced row echelon form of the rows of `rows` with partial pivoting in
/// column order, pivots normalized to 1. Rows whose remaining entries are all
/// below pivot_tol (relative to the largest entry) are dropped. The result
/// depends only on the row space, not on the particular spanning set.
ComplexMatrix canonical_row_basis(const ComplexMatrix& rows, double pivot_tol = 1e-9);

struct LeastSquaresSolution {
  ComplexMatrix coefficients;
  /// sigma_max / sigma_min of the column-equilibrated design matrix.
  double condition = 0.0;
};

/// Minimizes ||A X - B|| column by column. Columns of A are scaled to unit
/// max-norm before factorizing; throws FitError when the scaled condition
/// number exceeds max_condition.
LeastSquaresSolution solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& b,
                                         double max_condition);

/// Rows: points, columns: monomials evaluated at the (complex) points.
ComplexMatrix monomial_design(std::span<const ComplexVector> points,
                              const std::vector<Exponents>& monomials);

}  // namespace spencerkit

#endif  // SPENCERKIT_NUMERICS_HPP_
