// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_BOX_HPP_
#define SPENCERKIT_BOX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spencerkit {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultDimensionCap = 4;

inline std::span<const double> as_span(const RealVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

/// Axis-aligned box in R^{2n}; the coordinate patch everything lives on.
class Box {
 public:
  Box() = default;
  /// Throws ConfigurationError unless lo < hi on every axis, both have
  /// length 2n, and 1 <= n <= max_n.
  Box(int n, std::vector<double> lo, std::vector<double> hi,
      int max_n = kDefaultDimensionCap);
  static Box cube(int n, double lo, double hi, int max_n = kDefaultDimensionCap);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  double diameter() const;
  RealVector center() const;

  /// Inclusive containment, widened by `slack` on every side.
  bool contains(std::span<const double> p, double slack = 0.0) const;
  bool contains(const RealVector& p, double slack = 0.0) const {
    return contains(as_span(p), slack);
  }
  bool contains(const Box& other, double slack = 0.0) const;
  /// Intersection, or nullopt when it has empty interior.
  std::optional<Box> intersect(const Box& other) const;
  /// Boundary-tolerance used for lattice membership (1e-12 x diameter).
  double slack() const { return 1e-12 * diameter(); }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  int n_ = 0;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Tight box around a nonempty point set. Degenerate extents are allowed
/// (a single lattice point yields lo == hi on every axis), so the result
/// bypasses the lo < hi check of the public constructor.
Box bounding_box(int n, std::span<const RealVector> points);

/// Uniform lattice with k points per axis including both endpoints, ordered
/// lexicographically with the first axis slowest.
class SampleGrid {
 public:
  SampleGrid(Box box, int points_per_axis);

  const Box& box() const { return box_; }
  int points_per_axis() const { return k_; }
  std::size_t size() const { return points_.size(); }
  const RealVector& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<RealVector>& points() const { return points_; }
  std::span<const double> point(std::size_t i) const { return as_span(points_[i]); }

  /// Indices of lattice points inside `region` (boundary inclusive).
  std::vector<std::size_t> indices_in(const Box& region) const;

 private:
  Box box_;
  int k_;
  std::vector<RealVector> points_;
};

/// Worker count: SPENCERKIT_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, count) across worker_count() threads. Callers
/// write into per-index slots and reduce afterwards in index order, so
/// results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn);

namespace detail {
void run_chunks(std::size_t count, unsigned workers,
                void (*body)(void*, std::size_t, std::size_t), void* ctx);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  auto body = [](void* ctx, std::size_t begin, std::size_t end) {
    auto& f = *static_cast<std::remove_reference_t<Fn>*>(ctx);
    for (std::size_t i = begin; i < end; ++i) f(i);
  };
  detail::run_chunks(count, workers, body, &fn);
}

}  // namespace spencerkit

#endif  // SPENCERKIT_BOX_HPP_
