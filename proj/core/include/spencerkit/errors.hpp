// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_ERRORS_HPP_
#define SPENCERKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spencerkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or box lies outside the region an object is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid sizes, degrees or sampling settings supplied by the caller.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A linear-algebra stage failed (SVD did not converge, NaN, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The (1,0)/(0,1) eigenspace split of J could not be resolved.
class DegenerateStructureError : public NumericalError {
 public:
  DegenerateStructureError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class IndependenceError : public Error {
 public:
  using Error::Error;
};

/// No passive-coordinate selection produced a nondegenerate chart.
class ChartError : public Error {
 public:
  ChartError(const std::string& what, double best_determinant)
      : Error(what), best_determinant_(best_determinant) {}
  double best_determinant() const noexcept { return best_determinant_; }

 private:
  double best_determinant_;
};

/// Least-squares fit on an ill-conditioned sample cloud.
class FitError : public NumericalError {
 public:
  FitError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Malformed text input; position is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

class InversionError : public Error {
 public:
  using Error::Error;
};

}  // namespace spencerkit

#endif  // SPENCERKIT_ERRORS_HPP_
