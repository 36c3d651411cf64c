// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_CRSOLVE_HPP_
#define SPENCERKIT_CRSOLVE_HPP_

#include <span>
#include <string>
#include <vector>

#include "spencerkit/box.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/polynomial.hpp"
#include "spencerkit/report.hpp"

namespace spencerkit {

inline constexpr double kDefaultSvdRelTol = 1e-8;

/// Complex polynomial function of the 2n real coordinates on a box.
struct ScalarField {
  Polynomial expr;
  Box box;

  ScalarField() = default;
  /// Throws ConfigurationError if expr is not over 2n variables or exceeds
  /// the degree cap.
  ScalarField(Polynomial expr, Box box, int degree_cap = kDefaultDegreeCap);

  Complex operator()(std::span<const double> p) const { return expr(p); }
  /// Complex gradient (df/dx_1, ..., df/dx_2n) at p.
  ComplexVector gradient(std::span<const double> p) const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;
};

/// max over the grid of ||J(p)^T df_p - i df_p||_max.
double cr_residual(const ACStructure& acs, const ScalarField& f, const SampleGrid& grid);

/// Real form with u = Re f, v = Im f: metrics `cr_du` = max ||J^T du + dv||
/// and `cr_dv` = max ||J^T dv - du||. The complex residual lies between the
/// larger of the two and sqrt(2) times it.
Report cr_equations_check(const ACStructure& acs, const ScalarField& f,
                          const SampleGrid& grid, double tol);

struct AHSolutionSet {
  std::vector<ScalarField> basis;
  std::vector<double> singular_values;
  double threshold_used = 0.0;
  int degree = 0;
};

/// Nonconstant polynomial solutions of J^T df = i df up to `degree`, from
/// the SVD nullspace of the pointwise collocation system. The basis is the
/// reduced row echelon form of the nullspace in graded monomial order, so
/// each element has leading coefficient 1 and the list is deterministic.
AHSolutionSet solve_ah_polynomials(const ACStructure& acs, int degree, const SampleGrid& grid,
                                   double svd_rel_tol = kDefaultSvdRelTol);

/// Real Jacobian of (Re f1, Im f1, ..., Re fm, Im fm) at p; 2m x 2n.
RealMatrix real_jacobian(std::span<const ScalarField> funcs, std::span<const double> p);

struct RankEvidence {
  int rank = 0;
  std::size_t best_point = 0;           ///< first grid index attaining `rank`
  std::vector<double> singular_values;  ///< at best_point
  std::size_t rank_drop_points = 0;     ///< grid points with rank below `rank`
};

RankEvidence independence_evidence(std::span<const ScalarField> funcs, const SampleGrid& grid,
                                   double svd_rel_tol = kDefaultSvdRelTol);

/// Generic (max over grid) numerical rank of the real Jacobian. The
/// functions are independent iff this equals 2m.
int independence_rank(std::span<const ScalarField> funcs, const SampleGrid& grid,
                      double svd_rel_tol = kDefaultSvdRelTol);

struct TypeTolerances {
  double svd_rel_tol = kDefaultSvdRelTol;
};

struct TypeEstimate {
  int m = 0;
  std::vector<ScalarField> selected;
  /// Singular values of the selected set's Jacobian after each acceptance.
  std::vector<std::vector<double>> jacobian_rank_evidence;
  int degree = 0;
  int points_per_axis = 0;
  double svd_rel_tol = 0.0;
  std::size_t candidates = 0;
  std::vector<std::string> notes;

  friend bool operator==(const TypeEstimate&, const TypeEstimate&) = default;
};

/// Greedy maximal independent subset of the polynomial solution basis. The
/// result is a lower bound on the type: non-polynomial almost holomorphic
/// functions are invisible to the ansatz.
TypeEstimate estimate_spencer_type(const ACStructure& acs, const SampleGrid& grid, int degree,
                                   const TypeTolerances& tols = {});

}  // namespace spencerkit

#endif  // SPENCERKIT_CRSOLVE_HPP_
