// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spencerkit/pseudogroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "spencerkit/errors.hpp"

namespace spencerkit {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kGiven:
      return "given";
    case Provenance::kComposed:
      return "composed";
    case Provenance::kInverted:
      return "inverted";
    case Provenance::kRestricted:
      return "restricted";
    case Provenance::kIdentity:
      return "identity";
  }
  return "unknown";
}

struct LocalMap::Node {
  virtual ~Node() = default;
  virtual RealVector eval(std::span<const double> p) const = 0;
  virtual RealMatrix jacobian(std::span<const double> p) const = 0;
  virtual const std::vector<Polynomial>* components() const { return nullptr; }
};

namespace {

class PolynomialNode final : public LocalMap::Node {
 public:
  explicit PolynomialNode(std::vector<Polynomial> comps) : comps_(std::move(comps)) {
    for (const auto& c : comps_) {
      for (std::size_t v = 0; v < comps_.size(); ++v) jac_.push_back(c.derivative(v));
    }
  }
  RealVector eval(std::span<const double> p) const override {
    RealVector out(static_cast<Eigen::Index>(comps_.size()));
    for (std::size_t k = 0; k < comps_.size(); ++k) out[static_cast<Eigen::Index>(k)] = comps_[k](p).real();
    return out;
  }
  RealMatrix jacobian(std::span<const double> p) const override {
    const auto d = static_cast<Eigen::Index>(comps_.size());
    RealMatrix j(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) j(r, c) = jac_[static_cast<std::size_t>(r * d + c)](p).real();
    }
    return j;
  }
  const std::vector<Polynomial>* components() const override { return &comps_; }

 private:
  std::vector<Polynomial> comps_;
  std::vector<Polynomial> jac_;
};

class CompositeNode final : public LocalMap::Node {
 public:
  CompositeNode(LocalMap outer, LocalMap inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}
  RealVector eval(std::span<const double> p) const override { return outer_(inner_(p)); }
  RealMatrix jacobian(std::span<const double> p) const override {
    const RealVector q = inner_(p);
    return outer_.jacobian(as_span(q)) * inner_.jacobian(p);
  }

 private:
  LocalMap outer_;
  LocalMap inner_;
};

struct NewtonResult {
  RealVector x;
  double residual = 0.0;
  bool converged = false;
};

NewtonResult damped_newton(const LocalMap& f, const RealVector& target, RealVector x,
                           double tol, int max_iter) {
  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  RealVector r = f(x) - target;
  double rn = r.cwiseAbs().maxCoeff();
  for (int it = 0; it < max_iter && rn > tol * scale; ++it) {
    const RealMatrix j = f.jacobian(as_span(x));
    const RealVector step = j.partialPivLu().solve(r);
    if (!step.allFinite()) break;
    double lambda = 1.0;
    RealVector xn = x - step;
    RealVector rnext = f(xn) - target;
    while (rnext.cwiseAbs().maxCoeff() >= rn && lambda > 1e-6) {
      lambda *= 0.5;
      xn = x - lambda * step;
      rnext = f(xn) - target;
    }
    const double next = rnext.cwiseAbs().maxCoeff();
    if (!(next < rn)) break;
    x = std::move(xn);
    r = std::move(rnext);
    rn = next;
  }
  return {std::move(x), rn, rn <= tol * scale};
}

class InverseNode final : public LocalMap::Node {
 public:
  InverseNode(LocalMap forward, std::vector<RealVector> images, std::vector<RealVector> preimages,
              double tol, int max_iter)
      : forward_(std::move(forward)),
        images_(std::move(images)),
        preimages_(std::move(preimages)),
        tol_(tol),
        max_iter_(max_iter) {}

  RealVector eval(std::span<const double> q) const override {
    const Eigen::Map<const RealVector> target(q.data(), static_cast<Eigen::Index>(q.size()));
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const double d2 = (images_[i] - target).squaredNorm();
      if (d2 < best) {
        best = d2;
        nearest = i;
      }
    }
    NewtonResult res = damped_newton(forward_, target, preimages_[nearest], tol_, max_iter_);
    if (!res.converged) {
      throw InversionError("Newton did not converge for " + forward_.name() + " (residual " +
                           format_double(res.residual) + ")");
    }
    return std::move(res.x);
  }
  RealMatrix jacobian(std::span<const double> q) const override {
    const RealVector p = eval(q);
    return forward_.jacobian(as_span(p)).inverse();
  }

 private:
  LocalMap forward_;
  std::vector<RealVector> images_;
  std::vector<RealVector> preimages_;
  double tol_;
  int max_iter_;
};

std::string format_point(const RealVector& p) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (k > 0) s += ", ";
    s += format_double(p[k]);
  }
  return s + ")";
}

// Largest lattice-tight box whose grid points are all flagged valid: start
// from the bounding box of the valid points and peel the face holding the
// most invalid points (lowest axis, low side first on ties) until clean.
std::optional<Box> effective_domain(const SampleGrid& grid, const std::vector<char>& valid) {
  const int n = grid.box().n();
  const int d = 2 * n;
  std::vector<RealVector> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (valid[i]) pts.push_back(grid[i]);
  }
  if (pts.empty()) return std::nullopt;
  Box t = bounding_box(n, pts);
  const double eps = 1e-12 * std::max(1.0, grid.box().diameter());
  for (;;) {
    const auto inside = grid.indices_in(t);
    std::vector<std::size_t> bad;
    for (std::size_t i : inside) {
      if (!valid[i]) bad.push_back(i);
    }
    if (bad.empty()) return t;

    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i : inside) {
      for (int a = 0; a < d; ++a) {
        lo[a] = std::min(lo[a], grid[i][a]);
        hi[a] = std::max(hi[a], grid[i][a]);
      }
    }
    std::size_t best_count = 0;
    int best_axis = 0;
    bool best_low = true;
    for (int a = 0; a < d; ++a) {
      for (bool low : {true, false}) {
        const double face = low ? lo[a] : hi[a];
        const auto count = static_cast<std::size_t>(std::count_if(
            bad.begin(), bad.end(), [&](std::size_t i) { return std::abs(grid[i][a] - face) <= eps; }));
        if (count > best_count) {
          best_count = count;
          best_axis = a;
          best_low = low;
        }
      }
    }
    const double face = best_low ? lo[best_axis] : hi[best_axis];
    pts.clear();
    for (std::size_t i : inside) {
      if (valid[i] && std::abs(grid[i][best_axis] - face) > eps) pts.push_back(grid[i]);
    }
    if (pts.empty()) return std::nullopt;
    t = bounding_box(n, pts);
  }
}

}  // namespace

LocalMap LocalMap::polynomial(std::string name, Box domain, std::vector<Polynomial> components) {
  if (components.size() != static_cast<std::size_t>(domain.dim())) {
    throw ConfigurationError("map " + name + " needs 2n components");
  }
  for (const auto& c : components) {
    if (c.num_vars() != components.size()) {
      throw ConfigurationError("map " + name + ": components must be polynomials in 2n variables");
    }
    if (!c.is_real()) throw ConfigurationError("map " + name + ": components must be real");
  }
  LocalMap m;
  m.node_ = std::make_shared<PolynomialNode>(std::move(components));
  m.name_ = std::move(name);
  m.domain_ = std::move(domain);
  return m;
}

LocalMap LocalMap::identity(Box domain, std::string name) {
  const auto d = static_cast<std::size_t>(domain.dim());
  std::vector<Polynomial> comps;
  for (std::size_t k = 0; k < d; ++k) comps.push_back(Polynomial::variable(d, k));
  LocalMap m = polynomial(name.empty() ? "id" : std::move(name), std::move(domain), std::move(comps));
  m.provenance_ = Provenance::kIdentity;
  m.word_length_ = 0;
  return m;
}

bool LocalMap::is_polynomial() const { return node_->components() != nullptr; }

const std::vector<Polynomial>& LocalMap::components() const {
  const auto* c = node_->components();
  if (c == nullptr) throw ConfigurationError("map " + name_ + " is evaluation-only");
  return *c;
}

RealVector LocalMap::operator()(std::span<const double> p) const { return node_->eval(p); }

RealMatrix LocalMap::jacobian(std::span<const double> p) const { return node_->jacobian(p); }

LocalMap LocalMap::restricted(const Box& region, std::string name) const {
  const auto dom = domain_.intersect(region);
  if (!dom) throw DomainError("restriction of " + name_ + " to a disjoint box");
  LocalMap m = *this;
  m.domain_ = *dom;
  m.name_ = name.empty() ? name_ + "|sub" : std::move(name);
  if (provenance_ != Provenance::kIdentity) m.provenance_ = Provenance::kRestricted;
  m.declared_inverse_.reset();
  return m;
}

LocalMap LocalMap::renamed(std::string name) const {
  LocalMap m = *this;
  m.name_ = std::move(name);
  return m;
}

LocalMap LocalMap::with_word_length(int length) const {
  LocalMap m = *this;
  m.word_length_ = length;
  return m;
}

LocalMap LocalMap::with_declared_inverse(const LocalMap& inverse) const {
  if (inverse.dim() != dim()) throw ConfigurationError("declared inverse has wrong dimension");
  LocalMap m = *this;
  m.declared_inverse_ = std::make_shared<const LocalMap>(inverse);
  return m;
}

LocalMap compose(const LocalMap& outer, const LocalMap& inner, const SampleGrid& grid,
                 const PseudogroupTolerances& tols) {
  if (outer.dim() != inner.dim() || outer.dim() != grid.box().dim()) {
    throw ConfigurationError("composition of maps with different dimensions");
  }
  std::vector<char> valid(grid.size(), 0);
  const double slack = outer.domain().slack();
  for (std::size_t i : grid.indices_in(inner.domain())) {
    const RealVector q = inner(grid.point(i));
    valid[i] = outer.domain().contains(q, slack) ? 1 : 0;
  }
  const auto dom = effective_domain(grid, valid);
  if (!dom) {
    throw CompositionError("no grid point of " + inner.name() + " maps into the source of " +
                           outer.name());
  }

  LocalMap out;
  out.name_ = "(" + outer.name() + " o " + inner.name() + ")";
  out.domain_ = *dom;
  out.provenance_ = Provenance::kComposed;
  out.word_length_ = outer.word_length() + inner.word_length();
  if (outer.is_polynomial() && inner.is_polynomial()) {
    std::vector<Polynomial> comps;
    int degree = 0;
    for (const auto& c : outer.components()) {
      comps.push_back(c.substitute(inner.components()));
      degree = std::max(degree, comps.back().degree());
    }
    if (degree <= tols.degree_cap) {
      out.node_ = std::make_shared<PolynomialNode>(std::move(comps));
      return out;
    }
  }
  out.node_ = std::make_shared<CompositeNode>(outer, inner);
  return out;
}

LocalMap invert(const LocalMap& map, const SampleGrid& grid, const PseudogroupTolerances& tols) {
  if (const LocalMap* declared = map.declared_inverse()) {
    double worst = 0.0;
    for (std::size_t i : grid.indices_in(declared->domain())) {
      const RealVector back = map((*declared)(grid.point(i)));
      worst = std::max(worst, (back - grid[i]).cwiseAbs().maxCoeff());
    }
    if (!(worst <= tols.map_tol)) {
      throw InversionError("declared inverse of " + map.name() + " fails the round trip (" +
                           format_double(worst) + ")");
    }
    return *declared;
  }
  if (map.provenance() == Provenance::kIdentity) return map;

  const auto source = grid.indices_in(map.domain());
  if (source.empty()) throw InversionError("source of " + map.name() + " has no grid points");
  std::vector<RealVector> images;
  std::vector<RealVector> preimages;
  double min_det = std::numeric_limits<double>::infinity();
  for (std::size_t i : source) {
    min_det = std::min(min_det, std::abs(map.jacobian(grid.point(i)).determinant()));
    images.push_back(map(grid.point(i)));
    preimages.push_back(grid[i]);
  }
  if (!(min_det > tols.det_tol)) {
    throw InversionError("Jacobian of " + map.name() + " degenerates on its source (min |det| " +
                         format_double(min_det) + ")");
  }

  const InverseNode seeder(map, images, preimages, tols.newton_tol, tols.newton_max_iter);
  const Box image_box = bounding_box(grid.box().n(), images);
  std::vector<char> valid(grid.size(), 0);
  std::vector<RealVector> seed_images = images;
  std::vector<RealVector> seed_preimages = preimages;
  const double slack = map.domain().slack();
  for (std::size_t i : grid.indices_in(image_box)) {
    RealVector p;
    try {
      p = seeder.eval(grid.point(i));
    } catch (const InversionError&) {
      throw InversionError("Newton failed for " + map.name() + " at image point " +
                           format_point(grid[i]));
    }
    if (map.domain().contains(p, slack)) {
      valid[i] = 1;
      seed_images.push_back(grid[i]);
      seed_preimages.push_back(std::move(p));
    }
  }
  const auto dom = effective_domain(grid, valid);
  if (!dom) throw InversionError("image of " + map.name() + " contains no grid point");

  LocalMap out;
  out.node_ = std::make_shared<InverseNode>(map, std::move(seed_images), std::move(seed_preimages),
                                            tols.newton_tol, tols.newton_max_iter);
  out.name_ = "inv(" + map.name() + ")";
  out.domain_ = *dom;
  out.provenance_ = Provenance::kInverted;
  out.word_length_ = map.word_length();
  return out;
}

namespace {

// A map sampled once on the grid, for repeated equality tests.
struct Sampled {
  LocalMap map;
  std::vector<std::size_t> lattice;
  std::vector<int> slot;  // grid index -> column, -1 outside the domain
  RealMatrix values;
};

Sampled sample(const LocalMap& map, const SampleGrid& grid) {
  Sampled s{map, grid.indices_in(map.domain()), std::vector<int>(grid.size(), -1), {}};
  s.values.resize(map.dim(), static_cast<Eigen::Index>(s.lattice.size()));
  for (std::size_t k = 0; k < s.lattice.size(); ++k) {
    s.slot[s.lattice[k]] = static_cast<int>(k);
    s.values.col(static_cast<Eigen::Index>(k)) = map(grid.point(s.lattice[k]));
  }
  return s;
}

bool sampled_match(const Sampled& candidate, const Sampled& member, double tol) {
  if (candidate.lattice.empty()) return false;
  for (std::size_t k = 0; k < candidate.lattice.size(); ++k) {
    const int s = member.slot[candidate.lattice[k]];
    if (s < 0) return false;
    const double diff =
        (candidate.values.col(static_cast<Eigen::Index>(k)) - member.values.col(s)).cwiseAbs().maxCoeff();
    if (!(diff <= tol)) return false;
  }
  return true;
}

bool same_element(const Sampled& a, const Sampled& b, double tol) {
  return a.lattice == b.lattice && sampled_match(a, b, tol);
}

bool matches_any(const Sampled& candidate, const std::vector<Sampled>& pool, double tol,
                 bool exact_domain) {
  return std::any_of(pool.begin(), pool.end(), [&](const Sampled& m) {
    return exact_domain ? same_element(candidate, m, tol) : sampled_match(candidate, m, tol);
  });
}

bool inside(const Box& outer, const Box& inner) { return outer.contains(inner, outer.slack()); }

}  // namespace

bool matches(const LocalMap& candidate, const LocalMap& member, const SampleGrid& grid,
             double tol) {
  return sampled_match(sample(candidate, grid), sample(member, grid), tol);
}

PseudogroupFamily generate(const PseudogroupFamily& family, const SampleGrid& grid,
                           const GenerateOptions& options) {
  if (family.depth < 1) throw ConfigurationError("closure depth must be at least 1");
  PseudogroupFamily out = family;
  out.members.clear();
  std::vector<Sampled> pool;
  for (const auto& m : family.members) {
    Sampled s = sample(m, grid);
    if (!matches_any(s, pool, family.dedup_tol, true)) pool.push_back(std::move(s));
  }

  struct Candidate {
    LocalMap map;
    bool exact_domain;
  };
  std::size_t fresh_begin = 0;
  bool truncated = false;
  while (!truncated) {
    const std::size_t end = pool.size();
    std::vector<Candidate> candidates;
    for (std::size_t i = fresh_begin; i < end; ++i) {
      const LocalMap& m = pool[i].map;
      candidates.push_back({LocalMap::identity(m.domain(), "id|" + m.name()), true});
      for (std::size_t r = 0; r < family.restriction_targets.size(); ++r) {
        const Box& target = family.restriction_targets[r];
        if (!inside(m.domain(), target)) continue;
        candidates.push_back({m.restricted(target, m.name() + "|R" + std::to_string(r + 1)), true});
      }
      if (options.include_inverses) {
        try {
          candidates.push_back({invert(m, grid, options.tols), false});
        } catch (const Error& e) {
          out.notes.push_back("inverse of " + m.name() + ": " + e.what());
        }
      }
    }
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = 0; j < end; ++j) {
        if (i < fresh_begin && j < fresh_begin) continue;
        const LocalMap& outer = pool[i].map;
        const LocalMap& inner = pool[j].map;
        if (outer.word_length() + inner.word_length() > family.depth) continue;
        // Composing with an identity only restricts; nothing new.
        if (outer.word_length() == 0 || inner.word_length() == 0) continue;
        try {
          candidates.push_back({compose(outer, inner, grid, options.tols), false});
        } catch (const CompositionError&) {
          // not composable on the lattice
        } catch (const Error& e) {
          out.notes.push_back("composite " + outer.name() + " o " + inner.name() + ": " + e.what());
        }
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.map.word_length() != b.map.word_length()) return a.map.word_length() < b.map.word_length();
      return a.map.name() < b.map.name();
    });

    fresh_begin = end;
    for (const auto& c : candidates) {
      if (pool.size() >= options.tols.max_members) {
        truncated = true;
        out.notes.push_back("closure truncated at " + std::to_string(pool.size()) + " members");
        break;
      }
      try {
        Sampled s = sample(c.map, grid);
        if (s.lattice.empty()) continue;
        if (!matches_any(s, pool, family.dedup_tol, c.exact_domain)) pool.push_back(std::move(s));
      } catch (const Error& e) {
        out.notes.push_back("sampling " + c.map.name() + ": " + e.what());
      }
    }
    if (pool.size() == fresh_begin) break;
  }
  for (auto& s : pool) out.members.push_back(std::move(s.map));
  return out;
}

Report AxiomReport::summary() const {
  Report r("axioms");
  for (std::size_t k = 0; k < axioms.size(); ++k) {
    const std::string tag = "axiom" + std::to_string(k + 1);
    r.check_at_most(tag + "_violations", axioms[k].errored() ? 1.0 : axioms[k].value("violations"),
                    "max_violations", 0.0);
    for (const auto& note : axioms[k].notes()) r.note(tag + ": " + note);
  }
  return r;
}

AxiomReport validate_axioms(const PseudogroupFamily& family, const SampleGrid& grid,
                            const PseudogroupTolerances& tols) {
  if (family.members.empty()) throw ConfigurationError("family has no members");
  const double tol = family.dedup_tol;
  std::vector<Sampled> pool;
  for (const auto& m : family.members) pool.push_back(sample(m, grid));

  AxiomReport out;
  const char* titles[] = {"composition", "inverse", "restriction", "gluing", "identity"};
  std::array<std::size_t, 5> checked{};
  std::array<std::size_t, 5> violations{};
  for (std::size_t k = 0; k < 5; ++k) out.axioms[k] = Report(std::string("axiom") + std::to_string(k + 1) + "_" + titles[k]);
  auto violate = [&](std::size_t axiom, std::string what) {
    ++violations[axiom];
    // Keep reports readable for large families.
    if (violations[axiom] <= 10) out.axioms[axiom].note(std::move(what));
  };
  auto found = [&](const LocalMap& m) { return matches_any(sample(m, grid), pool, tol, false); };

  // (1) composable pairs within the word-length bound
  for (const auto& outer : family.members) {
    for (const auto& inner : family.members) {
      if (outer.word_length() + inner.word_length() > family.depth) continue;
      std::optional<LocalMap> composite;
      try {
        composite = compose(outer, inner, grid, tols);
      } catch (const CompositionError&) {
        continue;
      }
      ++checked[0];
      if (!found(*composite)) violate(0, "composite " + composite->name() + " is not a member");
    }
  }
  // (2) inverses
  for (const auto& m : family.members) {
    ++checked[1];
    try {
      const LocalMap inv = invert(m, grid, tols);
      if (!found(inv)) violate(1, "inverse of " + m.name() + " is not a member");
    } catch (const Error& e) {
      violate(1, "inverse of " + m.name() + " unavailable: " + e.what());
    }
  }
  // (3) declared restriction targets
  for (const auto& m : family.members) {
    for (const auto& target : family.restriction_targets) {
      if (!inside(m.domain(), target)) continue;
      ++checked[2];
      const LocalMap r = m.restricted(target);
      if (!found(r)) violate(2, "restriction of " + m.name() + " is not a member");
    }
  }
  // (4) declared glue tests
  for (const auto& test : family.glue_tests) {
    bool all_pieces = !test.cover.empty();
    for (const auto& piece : test.cover) {
      if (!all_pieces) break;
      try {
        all_pieces = found(test.map.restricted(piece));
      } catch (const DomainError&) {
        all_pieces = false;
      }
    }
    if (!all_pieces) {
      out.axioms[3].note("glue test " + test.map.name() + ": some cover piece is not a member (vacuous)");
      continue;
    }
    ++checked[3];
    if (!found(test.map)) violate(3, "glued map " + test.map.name() + " is not a member");
  }
  // (5) identities on sources
  for (const auto& m : family.members) {
    ++checked[4];
    if (!found(LocalMap::identity(m.domain()))) violate(4, "identity on the source of " + m.name() + " is not a member");
  }

  for (std::size_t k = 0; k < 5; ++k) {
    out.axioms[k].check_at_most("violations", static_cast<double>(violations[k]), "max_violations", 0.0);
    out.axioms[k].info("checked", static_cast<double>(checked[k]));
    out.axioms[k].tolerance("dedup_tol", tol);
  }
  out.axioms[2].note("restriction checked on declared targets only");
  out.axioms[3].note("gluing checked on declared glue tests only");
  return out;
}

Report check_ah_map(const ACStructure& acs, const LocalMap& map, const SampleGrid& grid,
                    double tol) {
  const Box& box = acs.box();
  double worst = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;
  for (std::size_t i : grid.indices_in(map.domain())) {
    const auto p = grid.point(i);
    const RealVector q = map(p);
    if (!box.contains(p, box.slack()) || !box.contains(q, box.slack())) {
      ++skipped;
      continue;
    }
    const RealMatrix dphi = map.jacobian(p);
    const RealMatrix defect = dphi * acs.value(p) - acs.value(as_span(q)) * dphi;
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    ++used;
  }
  if (used == 0) throw DomainError("map " + map.name() + " leaves the structure's box at every grid point");
  Report report("ah_map");
  report.check_at_most("ah_defect", worst, "tol_ah_map", tol);
  report.info("points_checked", static_cast<double>(used));
  report.info("points_skipped", static_cast<double>(skipped));
  return report;
}

Report check_over_diagram(const OverDiagram& diagram, double tol) {
  const auto& src = diagram.source_chart;
  const auto& dst = diagram.target_chart;
  const int m = src.m();
  if (dst.m() != m || static_cast<int>(diagram.downstairs.size()) != m) {
    throw ConfigurationError("diagram maps disagree on m");
  }
  const auto lattice = diagram.lattice.indices_in(diagram.upstairs.domain());
  std::size_t total = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t i : lattice) {
    const auto p = diagram.lattice.point(i);
    if (!src.box.contains(p, src.box.slack())) continue;
    ++total;
    const RealVector q = diagram.upstairs(p);
    if (!dst.box.contains(q, dst.box.slack())) {
      ++violations;
      continue;
    }
    const ComplexVector w = src.project(p);
    const std::span<const Complex> in(w.data(), static_cast<std::size_t>(m));
    ComplexVector down(m);
    for (int j = 0; j < m; ++j) down[j] = diagram.downstairs[static_cast<std::size_t>(j)].evaluate(in);
    const ComplexVector up = dst.project(as_span(q));
    if (m > 0) worst = std::max(worst, (up - down).cwiseAbs().maxCoeff());
  }
  if (total == 0) throw DomainError("diagram lattice is empty");
  if (violations * 5 > total) {
    throw DomainError("upstairs map leaves the target chart at " + std::to_string(violations) +
                      " of " + std::to_string(total) + " lattice points");
  }
  Report report("over_diagram");
  report.check_at_most("diagram_defect", worst, "tol_diagram", tol);
  report.info("points_checked", static_cast<double>(total - violations));
  report.info("domain_violations", static_cast<double>(violations));
  return report;
}

}  // namespace spencerkit
