// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "spencerkit/errors.hpp"
#include "spencerkit/numerics.hpp"

namespace spencerkit {
namespace {

TEST(Numerics, RankCountsAboveRelativeThreshold) {
  const double s[] = {10.0, 1.0, 1e-9, 0.0};
  EXPECT_EQ(numerical_rank(s, 1e-8), 2);
  EXPECT_EQ(numerical_rank(s, 1e-12), 3);
  const double zeros[] = {0.0, 0.0};
  EXPECT_EQ(numerical_rank(zeros, 1e-8), 0);
}

TEST(Numerics, NullspaceOfRankDeficientSystem) {
  ComplexMatrix a(4, 3);
  a << 1, 2, 3,
       2, 4, 6,
       1, 0, 1,
       0, 1, 1;
  const Nullspace ns = nullspace(a, 1e-10);
  ASSERT_EQ(ns.basis.cols(), 1);
  EXPECT_LT((a * ns.basis).norm(), 1e-12);
  EXPECT_NEAR(ns.basis.col(0).norm(), 1.0, 1e-14);
}

TEST(Numerics, NullspaceOfZeroMatrixIsEverything) {
  const Nullspace ns = nullspace(ComplexMatrix::Zero(3, 2), 1e-8);
  EXPECT_EQ(ns.basis.cols(), 2);
}

// Property: the canonical basis depends only on the row space.
TEST(Numerics, CanonicalRowBasisIgnoresSpanningSet) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexMatrix rows(2, 4);
  for (Eigen::Index i = 0; i < rows.size(); ++i) rows.data()[i] = {g(rng), g(rng)};
  ComplexMatrix mix(3, 2);
  for (Eigen::Index i = 0; i < mix.size(); ++i) mix.data()[i] = {g(rng), g(rng)};
  const ComplexMatrix a = canonical_row_basis(rows);
  const ComplexMatrix b = canonical_row_basis(mix * rows);
  ASSERT_EQ(a.rows(), 2);
  ASSERT_EQ(b.rows(), 2);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Numerics, LeastSquaresRecoversExactFit) {
  ComplexMatrix a(5, 2);
  ComplexMatrix b(5, 1);
  for (int i = 0; i < 5; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = static_cast<double>(i);
    b(i, 0) = Complex(2.0, -1.0) + Complex(0.5, 0.0) * static_cast<double>(i);
  }
  const auto sol = solve_least_squares(a, b, 1e12);
  EXPECT_NEAR(std::abs(sol.coefficients(0, 0) - Complex(2.0, -1.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(sol.coefficients(1, 0) - Complex(0.5, 0.0)), 0.0, 1e-13);
}

TEST(Numerics, LeastSquaresRejectsCollinearColumns) {
  ComplexMatrix a(4, 2);
  a.col(0).setOnes();
  a.col(1).setOnes();
  EXPECT_THROW(solve_least_squares(a, ComplexMatrix::Ones(4, 1), 1e12), FitError);
}

TEST(Numerics, MonomialDesignColumns) {
  std::vector<ComplexVector> pts = {(ComplexVector(1) << Complex(0, 1)).finished()};
  const auto d = monomial_design(pts, {{0}, {1}, {2}});
  EXPECT_EQ(d(0, 0), Complex(1, 0));
  EXPECT_EQ(d(0, 1), Complex(0, 1));
  EXPECT_EQ(d(0, 2), Complex(-1, 0));
}

}  // namespace
}  // namespace spencerkit
