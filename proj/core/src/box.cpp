// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/box.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "spencerkit/errors.hpp"

namespace spencerkit {

Box::Box(int n, std::vector<double> lo, std::vector<double> hi, int max_n)
    : n_(n), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (n < 1 || n > max_n) {
    throw ConfigurationError("complex dimension n=" + std::to_string(n) +
                             " outside 1.." + std::to_string(max_n));
  }
  if (lo_.size() != static_cast<std::size_t>(2 * n) ||
      hi_.size() != static_cast<std::size_t>(2 * n)) {
    throw ConfigurationError("box bounds must have length 2n");
  }
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!(lo_[k] < hi_[k])) {
      throw ConfigurationError("box needs lo < hi on axis " + std::to_string(k + 1));
    }
  }
}

Box Box::cube(int n, double lo, double hi, int max_n) {
  return Box(n, std::vector<double>(2 * n, lo), std::vector<double>(2 * n, hi), max_n);
}

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t k = 0; k < lo_.size(); ++k) s += (hi_[k] - lo_[k]) * (hi_[k] - lo_[k]);
  return std::sqrt(s);
}

RealVector Box::center() const {
  RealVector c(dim());
  for (int k = 0; k < dim(); ++k) c[k] = 0.5 * (lo_[k] + hi_[k]);
  return c;
}

bool Box::contains(std::span<const double> p, double slack) const {
  if (p.size() != lo_.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] >= lo_[k] - slack && p[k] <= hi_[k] + slack)) return false;
  }
  return true;
}

bool Box::contains(const Box& other, double slack) const {
  if (other.dim() != dim()) return false;
  for (int k = 0; k < dim(); ++k) {
    if (other.lo_[k] < lo_[k] - slack || other.hi_[k] > hi_[k] + slack) return false;
  }
  return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
  if (other.n_ != n_) return std::nullopt;
  std::vector<double> lo(dim());
  std::vector<double> hi(dim());
  for (int k = 0; k < dim(); ++k) {
    lo[k] = std::max(lo_[k], other.lo_[k]);
    hi[k] = std::min(hi_[k], other.hi_[k]);
    if (!(lo[k] < hi[k])) return std::nullopt;
  }
  return Box(n_, std::move(lo), std::move(hi), n_);
}

Box bounding_box(int n, std::span<const RealVector> points) {
  if (points.empty()) throw ConfigurationError("bounding box of an empty point set");
  std::vector<double> lo(points.front().data(), points.front().data() + 2 * n);
  std::vector<double> hi = lo;
  for (const auto& p : points) {
    for (int k = 0; k < 2 * n; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  // Widen degenerate axes by a hair so the result is a valid box that
  // still contains exactly the same lattice points.
  for (int k = 0; k < 2 * n; ++k) {
    if (!(lo[k] < hi[k])) {
      const double pad = 1e-9 * std::max(1.0, std::abs(lo[k]));
      lo[k] -= pad;
      hi[k] += pad;
    }
  }
  return Box(n, std::move(lo), std::move(hi), n);
}

SampleGrid::SampleGrid(Box box, int points_per_axis)
    : box_(std::move(box)), k_(points_per_axis) {
  if (k_ < 2) throw ConfigurationError("points_per_axis must be at least 2");
  const int dim = box_.dim();
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) {
    total *= static_cast<std::size_t>(k_);
    if (total > 50'000'000) throw ConfigurationError("sample grid too large");
  }
  points_.reserve(total);
  std::vector<int> idx(dim, 0);
  for (std::size_t i = 0; i < total; ++i) {
    RealVector p(dim);
    for (int a = 0; a < dim; ++a) {
      const double t = static_cast<double>(idx[a]) / (k_ - 1);
      // Endpoints exactly, interior by affine interpolation.
      p[a] = idx[a] == k_ - 1 ? box_.hi()[a] : box_.lo()[a] + t * (box_.hi()[a] - box_.lo()[a]);
    }
    points_.push_back(std::move(p));
    for (int a = dim - 1; a >= 0; --a) {
      if (++idx[a] < k_) break;
      idx[a] = 0;
    }
  }
}

std::vector<std::size_t> SampleGrid::indices_in(const Box& region) const {
  std::vector<std::size_t> out;
  const double slack = std::max(region.slack(), box_.slack());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (region.contains(points_[i], slack)) out.push_back(i);
  }
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("SPENCERKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

void run_chunks(std::size_t count, unsigned workers,
                void (*body)(void*, std::size_t, std::size_t), void* ctx) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  const std::size_t chunk = (count + workers - 1) / workers;
  // One slot per chunk; the lowest failing chunk is rethrown so the
  // reported error does not depend on scheduling.
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back([=, &failures] {
        try {
          body(ctx, begin, end);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace detail

}  // namespace spencerkit
