// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <memory>

#include "spencerkit/errors.hpp"
#include "spencerkit/pseudogroup.hpp"
#include "test_support.hpp"

namespace spencerkit {
namespace {

const Box kUnit = Box::cube(1, -1, 1);

LocalMap poly_map(const std::string& name, const Box& domain, const std::string& u,
                  const std::string& v) {
  return LocalMap::polynomial(name, domain, {testing::poly(u, 2), testing::poly(v, 2)});
}

LocalMap translate_a() { return poly_map("t_a", Box(1, {-1, -1}, {0.5, 1}), "x1 + 0.5", "x2"); }
LocalMap scale_2() { return poly_map("s2", Box::cube(1, -0.5, 0.5), "2*x1", "2*x2"); }

TEST(LocalMap, RejectsMalformedComponents) {
  EXPECT_THROW(LocalMap::polynomial("f", kUnit, {testing::poly("x1", 2)}), ConfigurationError);
  EXPECT_THROW(poly_map("f", kUnit, "(0+1i)*x1", "x2"), ConfigurationError);
}

TEST(Compose, SymbolicWhenBothArePolynomial) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap c = compose(scale_2(), translate_a(), grid);
  ASSERT_TRUE(c.is_polynomial());
  EXPECT_EQ(c.word_length(), 2);
  EXPECT_EQ(c.provenance(), Provenance::kComposed);
  // t_a maps [-1,0] x [-0.5,0.5] into dom(s2); the domain is lattice-tight.
  EXPECT_EQ(c.domain().lo(), (std::vector<double>{-1.0, -0.5}));
  EXPECT_EQ(c.domain().hi(), (std::vector<double>{0.0, 0.5}));
  const RealVector q = c(RealVector{{-1.0, 0.25}});
  EXPECT_DOUBLE_EQ(q[0], -1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.5);
}

TEST(Compose, FailsWhenNothingLandsInTheOuterSource) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap far = poly_map("far", kUnit, "x1 + 5", "x2");
  EXPECT_THROW(compose(scale_2(), far, grid), CompositionError);
}

TEST(Invert, NewtonInverseAgreesWithTheTrueInverse) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap sq = poly_map("sq", Box::cube(1, 0.2, 0.6), "x1^2 - x2^2", "2*x1*x2");
  const LocalMap inv = invert(sq, grid);
  EXPECT_EQ(inv.provenance(), Provenance::kInverted);
  ASSERT_GT(grid.indices_in(inv.domain()).size(), 0u);
  for (std::size_t i : grid.indices_in(inv.domain())) {
    const auto p = grid.point(i);
    const RealVector back = sq(inv(p));
    EXPECT_NEAR(back[0], p[0], 1e-10);
    EXPECT_NEAR(back[1], p[1], 1e-10);
  }
}

TEST(Invert, AffineInverseMatchesTheExplicitOne) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap inv = invert(translate_a(), grid);
  const LocalMap expected = poly_map("t_a^-1", Box(1, {-0.5, -1}, {1, 1}), "x1 - 0.5", "x2");
  EXPECT_TRUE(matches(inv, expected, grid, 1e-9));
}

TEST(Invert, DegenerateJacobianIsRejected) {
  const SampleGrid grid(kUnit, 9);
  EXPECT_THROW(invert(poly_map("fold", kUnit, "x1^2", "x2"), grid), InversionError);
  EXPECT_THROW(invert(poly_map("flat", kUnit, "x1", "0*x2"), grid), InversionError);
}

TEST(Invert, DeclaredInverseNeedsARoundTrip) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap wrong = poly_map("bad", Box(1, {-0.5, -1}, {1, 1}), "x1 - 0.25", "x2");
  EXPECT_THROW(invert(translate_a().with_declared_inverse(wrong), grid), InversionError);
  const LocalMap right = poly_map("good", Box(1, {-0.5, -1}, {1, 1}), "x1 - 0.5", "x2");
  EXPECT_EQ(invert(translate_a().with_declared_inverse(right), grid).name(), "good");
}

TEST(Matches, UsesSubsetSemantics) {
  const SampleGrid grid(kUnit, 9);
  const LocalMap full = poly_map("f", kUnit, "x1 + x2^2", "x2");
  const LocalMap part = full.restricted(Box::cube(1, -0.5, 0.5));
  EXPECT_TRUE(matches(part, full, grid, 1e-12));
  EXPECT_FALSE(matches(full, part, grid, 1e-12));
  EXPECT_FALSE(matches(poly_map("g", kUnit, "x1", "x2"), full, grid, 1e-12));
}

TEST(Restrict, DisjointBoxIsADomainError) {
  EXPECT_THROW(scale_2().restricted(Box::cube(1, 0.8, 0.9)), DomainError);
}

PseudogroupFamily translation_family() {
  PseudogroupFamily f;
  f.members = {translate_a(), scale_2()};
  f.depth = 2;
  f.restriction_targets = {Box(1, {-0.5, -0.5}, {0, 0})};
  f.glue_tests = {{translate_a(), {Box(1, {-1, -1}, {-0.25, 1}), Box(1, {-0.25, -1}, {0.5, 1})}}};
  return f;
}

TEST(Generate, ClosureSatisfiesEveryAxiom) {
  const SampleGrid grid(kUnit, 9);
  const PseudogroupFamily closed = generate(translation_family(), grid);
  EXPECT_GT(closed.members.size(), 2u);
  for (const auto& m : closed.members) EXPECT_LE(m.word_length(), 2);
  const AxiomReport axioms = validate_axioms(closed, grid);
  for (const auto& a : axioms.axioms) EXPECT_TRUE(a.passed()) << a.task();
  EXPECT_TRUE(axioms.summary().passed());
}

TEST(Generate, IsDeterministic) {
  const SampleGrid grid(kUnit, 9);
  const PseudogroupFamily a = generate(translation_family(), grid);
  const PseudogroupFamily b = generate(translation_family(), grid);
  ASSERT_EQ(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    EXPECT_EQ(a.members[i].name(), b.members[i].name());
  }
}

TEST(Generate, WithoutInversesOnlyTheInverseAxiomFails) {
  const SampleGrid grid(kUnit, 9);
  GenerateOptions options;
  options.include_inverses = false;
  const AxiomReport axioms = validate_axioms(generate(translation_family(), grid, options), grid);
  EXPECT_TRUE(axioms.axioms[0].passed());
  EXPECT_FALSE(axioms.axioms[1].passed());
  EXPECT_GT(axioms.axioms[1].value("violations"), 0.0);
  EXPECT_TRUE(axioms.axioms[2].passed());
  EXPECT_TRUE(axioms.axioms[3].passed());
  EXPECT_TRUE(axioms.axioms[4].passed());
}

TEST(Generate, RejectsZeroDepth) {
  PseudogroupFamily f = translation_family();
  f.depth = 0;
  EXPECT_THROW(generate(f, SampleGrid(kUnit, 5)), ConfigurationError);
}

TEST(AhMap, HolomorphicAndAntiHolomorphicMaps) {
  const ACStructure acs = testing::std_c1();
  const SampleGrid grid(kUnit, 9);
  const LocalMap sq = poly_map("sq", Box::cube(1, 0.2, 0.6), "x1^2 - x2^2", "2*x1*x2");
  const Report good = check_ah_map(acs, sq, grid, 1e-12);
  EXPECT_EQ(good.value("ah_defect"), 0.0);
  EXPECT_TRUE(good.passed());
  // D(conj) J - J D(conj) = [[0,-2],[-2,0]].
  const Report bad = check_ah_map(acs, poly_map("conj", kUnit, "x1", "-x2"), grid, 1e-12);
  EXPECT_NEAR(bad.value("ah_defect"), 2.0, 1e-14);
  EXPECT_FALSE(bad.passed());
}

TEST(AhMap, SkipsPointsThatLeaveTheBox) {
  const ACStructure acs = testing::std_c1();
  const Report r = check_ah_map(acs, poly_map("t", kUnit, "x1 + 1", "x2"), SampleGrid(kUnit, 5), 1e-12);
  // Only x1 <= 0 stays in the box: 3 of 5 columns.
  EXPECT_EQ(r.value("points_checked"), 15.0);
  EXPECT_EQ(r.value("points_skipped"), 10.0);
}

// Property: compositions of holomorphic maps stay holomorphic.
TEST(AhMap, ClosureOfHolomorphicMapsIsHolomorphic) {
  const ACStructure acs = testing::std_c1();
  const SampleGrid grid(kUnit, 9);
  PseudogroupFamily f;
  f.members = {poly_map("sq", Box::cube(1, 0.2, 0.6), "x1^2 - x2^2", "2*x1*x2"),
               poly_map("half", kUnit, "0.5*x1 + 0.25", "0.5*x2")};
  f.depth = 2;
  const PseudogroupFamily closed = generate(f, grid);
  EXPECT_GT(closed.members.size(), 4u);
  for (const auto& m : closed.members) {
    EXPECT_LE(check_ah_map(acs, m, grid, 1e-9).value("ah_defect"), 1e-9) << m.name();
  }
}

std::shared_ptr<const ACStructure> c1_structure() {
  return std::make_shared<const ACStructure>(testing::std_c1());
}

TEST(OverDiagram, CubicChartChange) {
  const auto acs = c1_structure();
  const SampleGrid grid(kUnit, 7);
  const SpencerChart a = build_spencer_chart(acs, {testing::field("x1 + (0+1i)*x2", kUnit)}, grid);
  const SpencerChart b = build_spencer_chart(
      acs,
      {testing::field("x1 + 0.1*x1^3 - 0.3*x1*x2^2 + (0+1i)*x2 + (0+0.3i)*x1^2*x2 - (0+0.1i)*x2^3",
                      kUnit)},
      grid);
  const OverDiagram d{LocalMap::identity(kUnit), a, b,
                      {parse_polynomial("w1 + 0.1*w1^3", 1, "w")}, grid};
  const Report r = check_over_diagram(d, 1e-8);
  EXPECT_LE(r.value("diagram_defect"), 1e-12);
  EXPECT_EQ(r.value("points_checked"), 49.0);

  const OverDiagram wrong{LocalMap::identity(kUnit), a, b, {parse_polynomial("w1", 1, "w")}, grid};
  EXPECT_NEAR(check_over_diagram(wrong, 1e-8).value("diagram_defect"), 0.1 * 2.0 * std::sqrt(2.0),
              1e-12);
}

TEST(OverDiagram, UpstairsMapLeavingTheChartIsADomainError) {
  const auto acs = c1_structure();
  const SampleGrid grid(kUnit, 5);
  const SpencerChart a = build_spencer_chart(acs, {testing::field("x1 + (0+1i)*x2", kUnit)}, grid);
  const OverDiagram d{poly_map("shift", kUnit, "x1 + 1.5", "x2"), a, a,
                      {parse_polynomial("w1 + 1.5", 1, "w")}, grid};
  EXPECT_THROW(check_over_diagram(d, 1e-8), DomainError);
}

}  // namespace
}  // namespace spencerkit
