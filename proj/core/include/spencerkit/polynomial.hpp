// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_POLYNOMIAL_HPP_
#define SPENCERKIT_POLYNOMIAL_HPP_

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace spencerkit {

using Complex = std::complex<double>;
using Exponents = std::vector<int>;

inline constexpr int kDefaultDegreeCap = 6;

int total_degree(const Exponents& e);

/// Graded order: lower total degree first, then lexicographically larger
/// exponent vectors first, so x1 precedes x2 and x1^2 precedes x1*x2.
struct GradedOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// All exponent vectors over `num_vars` variables of total degree <= `degree`,
/// in GradedOrder.
std::vector<Exponents> monomials_up_to(std::size_t num_vars, int degree,
                                       bool include_constant = true);

/// Sparse multivariate polynomial with complex coefficients. Variables are
/// indexed from zero; printed as x1, x2, ... Zero coefficients are never
/// stored, so two polynomials are equal iff their term maps are equal.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Complex, GradedOrder>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, Complex value);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(Exponents exponents, Complex coefficient = 1.0);

  std::size_t num_vars() const { return num_vars_; }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_real(double tol = 0.0) const;
  const TermMap& terms() const { return terms_; }
  Complex coefficient(const Exponents& exponents) const;

  void add_term(const Exponents& exponents, Complex coefficient);

  Polynomial derivative(std::size_t var) const;
  Polynomial conjugate_coefficients() const;
  /// Drops terms whose coefficient magnitude is <= tol.
  Polynomial pruned(double tol) const;

  Complex operator()(std::span<const double> point) const;
  Complex evaluate(std::span<const Complex> point) const;

  /// Substitutes args[i] for variable i. All args must share num_vars.
  Polynomial substitute(std::span<const Polynomial> args) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(Complex scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Canonical text in the scenario grammar, coefficients with 17
  /// significant digits. `prefix` names the variables (x1, x2, ...).
  std::string to_string(const std::string& prefix = "x") const;

 private:
  void check_vars(const Polynomial& other) const;

  std::size_t num_vars_;
  TermMap terms_;
};

/// Largest |coefficient|.
double max_coefficient(const Polynomial& p);

/// Parses the scenario polynomial grammar: `+`/`-` separated terms of the
/// form `coef * x1^a * x2^b`, where coef is a decimal or a `(a+bi)` literal
/// and either part of a term may be omitted. Throws ParseError.
Polynomial parse_polynomial(const std::string& text, std::size_t num_vars,
                            const std::string& prefix = "x");

std::string format_double(double value);
std::string format_complex(Complex value);

}  // namespace spencerkit

#endif  // SPENCERKIT_POLYNOMIAL_HPP_
