// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "spencerkit/errors.hpp"

namespace spencerkit {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedOrder::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void enumerate(std::size_t var, int remaining, Exponents& current,
               std::vector<Exponents>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate(var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Exponents> monomials_up_to(std::size_t num_vars, int degree,
                                       bool include_constant) {
  std::vector<Exponents> out;
  if (num_vars == 0) {
    if (include_constant) out.emplace_back();
    return out;
  }
  for (int d = include_constant ? 0 : 1; d <= degree; ++d) {
    Exponents current(num_vars, 0);
    enumerate(0, d, current, out);
  }
  return out;
}

Polynomial Polynomial::constant(std::size_t num_vars, Complex value) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw ConfigurationError("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  Polynomial p(num_vars);
  p.add_term(e, 1.0);
  return p;
}

Polynomial Polynomial::monomial(Exponents exponents, Complex coefficient) {
  Polynomial p(exponents.size());
  p.add_term(exponents, coefficient);
  return p;
}

int Polynomial::degree() const {
  // Graded order puts the highest degree last.
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

bool Polynomial::is_real(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

Complex Polynomial::coefficient(const Exponents& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial::add_term(const Exponents& exponents, Complex coefficient) {
  if (exponents.size() != num_vars_) {
    throw ConfigurationError("exponent vector length does not match variable count");
  }
  if (std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; })) {
    throw ConfigurationError("negative exponent");
  }
  if (coefficient == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw ConfigurationError("derivative variable out of range");
  Polynomial d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents lowered = e;
    lowered[var] -= 1;
    d.add_term(lowered, c * static_cast<double>(e[var]));
  }
  return d;
}

Polynomial Polynomial::conjugate_coefficients() const {
  Polynomial p(num_vars_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, std::conj(c));
  return p;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial p(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) > tol) p.terms_.emplace(e, c);
  }
  return p;
}

namespace {

template <typename T>
Complex evaluate_terms(const Polynomial::TermMap& terms, std::size_t num_vars,
                       std::span<const T> point) {
  if (point.size() != num_vars) {
    throw ConfigurationError("evaluation point has wrong dimension");
  }
  if (terms.empty()) return {};
  int max_exp = 0;
  for (const auto& [e, c] : terms) {
    for (int v : e) max_exp = std::max(max_exp, v);
  }
  std::vector<Complex> powers(num_vars * static_cast<std::size_t>(max_exp + 1));
  for (std::size_t i = 0; i < num_vars; ++i) {
    Complex acc = 1.0;
    for (int k = 0; k <= max_exp; ++k) {
      powers[i * (max_exp + 1) + k] = acc;
      acc *= Complex(point[i]);
    }
  }
  Complex sum{};
  for (const auto& [e, c] : terms) {
    Complex term = c;
    for (std::size_t i = 0; i < num_vars; ++i) {
      if (e[i] != 0) term *= powers[i * (max_exp + 1) + e[i]];
    }
    sum += term;
  }
  return sum;
}

}  // namespace

Complex Polynomial::operator()(std::span<const double> point) const {
  return evaluate_terms(terms_, num_vars_, point);
}

Complex Polynomial::evaluate(std::span<const Complex> point) const {
  return evaluate_terms(terms_, num_vars_, point);
}

Polynomial Polynomial::substitute(std::span<const Polynomial> args) const {
  if (args.size() != num_vars_) {
    throw ConfigurationError("substitution needs one polynomial per variable");
  }
  const std::size_t target_vars = args.empty() ? 0 : args.front().num_vars();
  for (const auto& a : args) {
    if (a.num_vars() != target_vars) {
      throw ConfigurationError("substituted polynomials must share variables");
    }
  }
  // powers[i][k] = args[i]^k, grown on demand.
  std::vector<std::vector<Polynomial>> powers(num_vars_);
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target_vars, 1.0));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * args[i]);
    return cache[k];
  };
  Polynomial result(target_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(target_vars, c);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] != 0) term *= power(i, e[i]);
    }
    result += term;
  }
  return result;
}

void Polynomial::check_vars(const Polynomial& other) const {
  if (other.num_vars_ != num_vars_) {
    throw ConfigurationError("polynomials over different variable counts");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  check_vars(other);
  Polynomial product(num_vars_);
  Exponents e(num_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
      product.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex scalar) {
  if (scalar == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  return p *= -1.0;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_complex(Complex value) {
  char buf[96];
  // Adding +0.0 maps -0 to 0 so emitted text is stable under reparsing.
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", value.real() + 0.0, value.imag() + 0.0);
  return buf;
}

std::string Polynomial::to_string(const std::string& prefix) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string monomial;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += prefix + std::to_string(i + 1);
      if (e[i] > 1) monomial += '^' + std::to_string(e[i]);
    }
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double mag = std::abs(c.real());
      if (!(mag == 1.0 && !monomial.empty())) coef = format_double(mag);
    } else {
      coef = format_complex(c);
    }
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coef;
    if (!coef.empty() && !monomial.empty()) out += '*';
    out += monomial;
  }
  return out;
}

double max_coefficient(const Polynomial& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(const std::string& text, std::size_t num_vars, const std::string& prefix)
      : text_(text), num_vars_(num_vars), prefix_(prefix) {}

  Polynomial parse() {
    Polynomial result(num_vars_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    result += parse_term() * sign;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      result += parse_term() * sign;
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " +
                         message + " in \"" + text_ + "\"",
                     pos_);
  }

  Polynomial parse_term() {
    Complex coef = 1.0;
    Exponents exps(num_vars_, 0);
    bool expect_factor = true;
    while (expect_factor) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      const char c = peek();
      if (c == '(') {
        coef *= parse_complex_literal();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        coef *= parse_number();
      } else if (text_.compare(pos_, prefix_.size(), prefix_) == 0) {
        const auto [var, power] = parse_variable();
        exps[var] += power;
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      skip_ws();
      expect_factor = !at_end() && peek() == '*';
      if (expect_factor) ++pos_;
    }
    return Polynomial::monomial(exps, coef);
  }

  double parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    // Reject inf/nan spellings that strtod accepts.
    for (const char* q = begin; q < end; ++q) {
      if (std::isalpha(static_cast<unsigned char>(*q)) && *q != 'e' && *q != 'E') {
        fail("invalid number");
      }
    }
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  bool at_number_start() const {
    return !at_end() &&
           (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.');
  }

  // (a), (a+bi), (a-bi), (bi), (+bi), (i), (a+i)
  Complex parse_complex_literal() {
    ++pos_;  // '('
    double re = 0.0;
    double im = 0.0;
    bool saw_any = false;
    for (int part = 0; part < 2; ++part) {
      skip_ws();
      if (!at_end() && peek() == ')') break;
      double sign = 1.0;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (part == 1) {
        fail("expected '+' or '-' in complex literal");
      }
      double value = 1.0;
      bool has_value = false;
      if (at_number_start()) {
        value = parse_number();
        has_value = true;
      }
      skip_ws();
      if (!at_end() && peek() == 'i') {
        ++pos_;
        im += sign * value;
      } else {
        if (!has_value) fail("expected a number in complex literal");
        re += sign * value;
      }
      saw_any = true;
    }
    skip_ws();
    if (at_end() || peek() != ')') fail("expected ')'");
    ++pos_;
    if (!saw_any) fail("empty complex literal");
    return {re, im};
  }

  std::pair<std::size_t, int> parse_variable() {
    pos_ += prefix_.size();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected variable index after '" + prefix_ + "'");
    const unsigned long index = std::stoul(text_.substr(start, pos_ - start));
    if (index < 1 || index > num_vars_) {
      pos_ = start;
      fail("variable " + prefix_ + std::to_string(index) + " out of range 1.." +
           std::to_string(num_vars_));
    }
    int power = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected exponent after '^'");
      power = std::stoi(text_.substr(start, pos_ - start));
    }
    return {index - 1, power};
  }

  const std::string& text_;
  std::size_t num_vars_;
  const std::string& prefix_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::size_t num_vars,
                            const std::string& prefix) {
  return PolynomialParser(text, num_vars, prefix).parse();
}

}  // namespace spencerkit
