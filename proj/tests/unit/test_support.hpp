// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_TESTS_TEST_SUPPORT_HPP_
#define SPENCERKIT_TESTS_TEST_SUPPORT_HPP_

#include <random>
#include <string>

#include "spencerkit/box.hpp"
#include "spencerkit/crsolve.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/polynomial.hpp"

namespace spencerkit::testing {

inline ACStructure std_c1() { return standard_structure(Box::cube(1, -1.0, 1.0)); }
inline ACStructure std_c2() { return standard_structure(Box::cube(2, -1.0, 1.0)); }

inline Polynomial poly(const std::string& text, std::size_t num_vars) {
  return parse_polynomial(text, num_vars, "x");
}

inline ScalarField field(const std::string& text, const Box& box) {
  return ScalarField(poly(text, static_cast<std::size_t>(box.dim())), box);
}

/// Random complex polynomial in `num_vars` variables, coefficients in the
/// unit square, every monomial up to `degree` present.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t num_vars, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p(num_vars);
  for (const auto& e : monomials_up_to(num_vars, degree)) p.add_term(e, {u(rng), u(rng)});
  return p;
}

}  // namespace spencerkit::testing

#endif  // SPENCERKIT_TESTS_TEST_SUPPORT_HPP_
