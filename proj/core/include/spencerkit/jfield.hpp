// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_JFIELD_HPP_
#define SPENCERKIT_JFIELD_HPP_

#include <span>
#include <vector>

#include "spencerkit/box.hpp"
#include "spencerkit/polynomial.hpp"
#include "spencerkit/report.hpp"

namespace spencerkit {

inline constexpr double kDefaultAcsTolerance = 1e-10;

/// Polynomial matrix field p -> J(p) on a box in R^{2n}. J acts on tangent
/// vectors from the left; covectors are acted on through the transpose.
/// J^2 = -I is not enforced here; use check_acs.
class ACStructure {
 public:
  /// `entries` is row-major, (2n)^2 real-coefficient polynomials in 2n
  /// variables. Throws ConfigurationError on size or realness violations.
  ACStructure(Box box, std::vector<Polynomial> entries);

  const Box& box() const { return box_; }
  int n() const { return box_.n(); }
  int dim() const { return box_.dim(); }
  const Polynomial& entry(int row, int col) const { return entries_[row * dim() + col]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  /// J(p) without the domain check.
  RealMatrix value(std::span<const double> p) const;
  /// d/dx_axis J at p, by exact differentiation of the entries.
  RealMatrix derivative(std::span<const double> p, int axis) const;

  friend bool operator==(const ACStructure& a, const ACStructure& b) {
    return a.box_ == b.box_ && a.entries_ == b.entries_;
  }

 private:
  Box box_;
  std::vector<Polynomial> entries_;
  std::vector<Polynomial> derivatives_;  // [axis][row][col]
};

/// Constant block-diagonal structure J0 (each block [[0,-1],[1,0]]).
ACStructure standard_structure(const Box& box);

/// S^-1 J0 S for a polynomial matrix field S with a known polynomial inverse.
/// Both are row-major (2n)^2 lists.
ACStructure conjugated_structure(const Box& box, const std::vector<Polynomial>& s,
                                 const std::vector<Polynomial>& s_inverse);

/// n = 2 on [-0.5, 0.5]^4 with S = I + x1 * E, E the unit matrix at
/// (row 2, column 3). Not integrable: its Nijenhuis tensor is nowhere zero.
ACStructure twisted_r4();

/// Domain-checked pointwise value of J.
RealMatrix eval_j(const ACStructure& acs, std::span<const double> p);

/// Metric `acs_defect` = max over the grid of ||J(p)^2 + I||_max.
Report check_acs(const ACStructure& acs, const SampleGrid& grid,
                 double tol = kDefaultAcsTolerance);

/// (J* omega)(X) := omega(J X); as components, J(p)^T omega.
ComplexVector pullback(const ACStructure& acs, const ComplexVector& omega,
                       std::span<const double> p);

struct TypeSplit {
  std::vector<ComplexVector> holomorphic;      ///< J^T w = +i w, the (1,0) covectors
  std::vector<ComplexVector> antiholomorphic;  ///< J^T w = -i w, the (0,1) covectors
  double residual = 0.0;                       ///< max eigen-equation defect
};

/// Canonical bases of the +-i eigenspaces of J(p)^T. Each basis comes from
/// the reduced row echelon form of the spectral projector (I -+ i J^T)/2 and
/// each vector is scaled to unit max-norm with its first nonzero component
/// positive real, so the output is reproducible bit for bit. Throws
/// DegenerateStructureError when the split is not (n, n) or the defect
/// exceeds tol.
TypeSplit split_type(const ACStructure& acs, std::span<const double> p, double tol = 1e-8);

/// N(d_a, d_b) = [J d_a, J d_b] - J[J d_a, d_b] - J[d_a, J d_b] at p, with exact
/// polynomial derivatives. Axes are 0-based. Returns zero for a == b and
/// exactly negates under swapping a and b.
RealVector nijenhuis(const ACStructure& acs, std::span<const double> p, int a, int b);

/// Metric `nijenhuis_max` = max over grid points and axis pairs of the
/// max-norm of the Nijenhuis tensor.
Report integrability_report(const ACStructure& acs, const SampleGrid& grid, double tol);

}  // namespace spencerkit

#endif  // SPENCERKIT_JFIELD_HPP_
