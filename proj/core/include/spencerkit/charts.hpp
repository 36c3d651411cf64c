// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_CHARTS_HPP_
#define SPENCERKIT_CHARTS_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spencerkit/crsolve.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/report.hpp"

namespace spencerkit {

struct ChartTolerances {
  double cr_tol = 1e-8;
  double svd_rel_tol = kDefaultSvdRelTol;
  double det_tol = 1e-6;
  /// Skips the CR and independence gates; only for building deliberately
  /// broken charts in negative tests.
  bool verify = true;
};

/// Verified Spencer coordinate system on the box U: m almost holomorphic
/// coordinates plus n - m passive complex coordinate pairs (0-based pair j
/// means the real axes 2j and 2j+1) whose real Jacobian is nonsingular.
struct SpencerChart {
  std::string name;
  Box box;
  std::shared_ptr<const ACStructure> acs;
  std::vector<ScalarField> ah_coords;
  std::vector<int> passive_pairs;
  /// min |det| of the full 2n x 2n real Jacobian over the verification grid.
  double jacobian_certificate = 0.0;

  int m() const { return static_cast<int>(ah_coords.size()); }
  /// The projection f_U: p -> (f_1(p), ..., f_m(p)).
  ComplexVector project(std::span<const double> p) const;
  /// Rows: Re/Im gradients of the coordinates, then unit rows of the
  /// passive axes.
  RealMatrix full_jacobian(std::span<const double> p) const;
};

/// U is the grid's box. Passive pairs are chosen greedily, each step taking
/// the pair that maximizes the grid-minimum of the Jacobian volume (lowest
/// index on ties). Throws IndependenceError for dependent coordinates and
/// ChartError when the best determinant is <= det_tol.
SpencerChart build_spencer_chart(std::shared_ptr<const ACStructure> acs,
                                 std::vector<ScalarField> ah_funcs, const SampleGrid& grid,
                                 const ChartTolerances& tols = {}, std::string name = {});

struct ProjectedCloud {
  std::string chart;
  std::vector<RealVector> sources;
  std::vector<ComplexVector> images;
};

/// Images of the grid points of the chart box, in grid order.
ProjectedCloud project(const SpencerChart& chart, const SampleGrid& grid);

struct FitOptions {
  int fit_degree = 4;
  double max_condition = 1e12;
  /// Fiber clustering radius relative to the chart box diameter.
  double cluster_tol_rel = 1e-6;
};

struct Factorization {
  /// H(w_1, ..., w_m), a polynomial in m complex variables.
  Polynomial holomorphic_part;
  double residual = 0.0;         ///< max |h(p) - H(f_U(p))| over the grid
  double fiber_variance = 0.0;   ///< max |h(p) - h(q)| with f_U(p) ~ f_U(q)
  std::size_t fiber_clusters = 0;
  double scale = 0.0;            ///< max |h| over the grid
  double condition = 0.0;
};

/// Tests h = H(f_1, ..., f_m) by a least-squares fit over the projected
/// cloud. Only measures; pass/fail is up to the caller.
Factorization factorize(const SpencerChart& chart, const ScalarField& h, const SampleGrid& grid,
                        const FitOptions& options = {});

/// phi: C^m -> C^m between two charts, fitted on the overlap lattice.
struct TransitionMap {
  std::string source;
  std::string target;
  std::size_t overlap_points = 0;
  std::vector<Polynomial> phi;        ///< w-bar-free fit, m polys in m vars
  std::vector<Polynomial> two_sided;  ///< fit in (w, w-bar), m polys in 2m vars
  double fit_residual = 0.0;
  double two_sided_residual = 0.0;
  double holomorphy_residual = 0.0;   ///< max |coefficient| of any w-bar monomial
  double jacobian_min_det = 0.0;      ///< min |det dphi/dw| over the cloud
  double cloud_diameter = 0.0;
  double condition = 0.0;

  ComplexVector apply(const ComplexVector& w) const;
};

/// Both charts must share the structure and m. Throws OverlapError when no
/// grid point lies in both boxes.
TransitionMap transition_map(const SpencerChart& a, const SpencerChart& b,
                             const SampleGrid& grid, const FitOptions& options = {});

/// max over the cloud of ||phi_bc(phi_ab(w)) - phi_ac(w)||_max.
double cocycle_residual(const TransitionMap& ab, const TransitionMap& bc,
                        const TransitionMap& ac, std::span<const ComplexVector> source_images);

/// Fits the three pairwise transitions on the triple-overlap lattice and
/// reports `cocycle_residual` against tol.
Report cocycle_check(const SpencerChart& a, const SpencerChart& b, const SpencerChart& c,
                     const SampleGrid& grid, double tol, const FitOptions& options = {});

/// Identity map of C^m as m polynomials.
std::vector<Polynomial> identity_map(int m);

}  // namespace spencerkit

#endif  // SPENCERKIT_CHARTS_HPP_
