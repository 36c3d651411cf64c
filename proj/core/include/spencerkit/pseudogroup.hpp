// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_PSEUDOGROUP_HPP_
#define SPENCERKIT_PSEUDOGROUP_HPP_

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spencerkit/box.hpp"
#include "spencerkit/charts.hpp"
#include "spencerkit/jfield.hpp"
#include "spencerkit/polynomial.hpp"
#include "spencerkit/report.hpp"

namespace spencerkit {

enum class Provenance { kGiven, kComposed, kInverted, kRestricted, kIdentity };

const char* to_string(Provenance p);

struct PseudogroupTolerances {
  double dedup_tol = 1e-9;  ///< absolute max-norm for map equality
  double map_tol = 1e-9;    ///< round-trip tolerance for declared inverses
  double det_tol = 1e-6;
  double newton_tol = 1e-12;
  int newton_max_iter = 60;
  int degree_cap = kDefaultDegreeCap;
  std::size_t max_members = 400;
};

/// Local diffeomorphism of R^{2n} with a box source. Either polynomial
/// (exact components and Jacobian) or evaluation-only (a composite or a
/// Newton inverse), in which case the Jacobian follows from the chain rule or
/// from inverting the forward Jacobian. Cheap to copy.
class LocalMap {
 public:
  static LocalMap polynomial(std::string name, Box domain, std::vector<Polynomial> components);
  static LocalMap identity(Box domain, std::string name = {});

  const std::string& name() const { return name_; }
  const Box& domain() const { return domain_; }
  Provenance provenance() const { return provenance_; }
  /// Generator count of the word this map represents; identities are 0.
  int word_length() const { return word_length_; }
  int dim() const { return domain_.dim(); }

  bool is_polynomial() const;
  /// Throws ConfigurationError for evaluation-only maps.
  const std::vector<Polynomial>& components() const;

  /// Evaluates the underlying formula; no domain check.
  RealVector operator()(std::span<const double> p) const;
  RealVector operator()(const RealVector& p) const { return (*this)(as_span(p)); }
  RealMatrix jacobian(std::span<const double> p) const;

  LocalMap restricted(const Box& region, std::string name = {}) const;
  LocalMap renamed(std::string name) const;
  LocalMap with_word_length(int length) const;

  const LocalMap* declared_inverse() const { return declared_inverse_.get(); }
  LocalMap with_declared_inverse(const LocalMap& inverse) const;

  struct Node;

 private:
  LocalMap() = default;

  std::shared_ptr<const Node> node_;
  std::string name_;
  Box domain_;
  Provenance provenance_ = Provenance::kGiven;
  int word_length_ = 1;
  std::shared_ptr<const LocalMap> declared_inverse_;

  friend LocalMap compose(const LocalMap&, const LocalMap&, const SampleGrid&,
                          const PseudogroupTolerances&);
  friend LocalMap invert(const LocalMap&, const SampleGrid&, const PseudogroupTolerances&);
};

/// outer o inner on the largest lattice-tight sub-box of dom(inner) whose
/// grid points all land in dom(outer). Composed symbolically when both are
/// polynomial and the result respects the degree cap. Throws
/// CompositionError when no grid point of dom(inner) maps into dom(outer).
LocalMap compose(const LocalMap& outer, const LocalMap& inner, const SampleGrid& grid,
                 const PseudogroupTolerances& tols = {});

/// Declared inverse after a round-trip check, otherwise a damped-Newton
/// inverse on the grid points of the image, seeded from the nearest sampled
/// preimage. Throws InversionError when the Jacobian degenerates on the
/// source lattice or Newton fails at some image point.
LocalMap invert(const LocalMap& map, const SampleGrid& grid,
                const PseudogroupTolerances& tols = {});

/// Candidate agrees with member on every grid point of dom(candidate), all of
/// which must lie in dom(member). False when dom(candidate) has no grid point.
bool matches(const LocalMap& candidate, const LocalMap& member, const SampleGrid& grid,
             double tol);

struct GlueTest {
  LocalMap map;
  std::vector<Box> cover;
};

struct PseudogroupFamily {
  std::vector<LocalMap> members;
  /// Closure bound: maximal word length of composites.
  int depth = 1;
  double dedup_tol = 1e-9;
  /// Targets for restriction closure and axiom (3).
  std::vector<Box> restriction_targets;
  /// Gluing tests for axiom (4).
  std::vector<GlueTest> glue_tests;
  /// Per-pair composition/inversion failures met during generation.
  std::vector<std::string> notes;
};

struct GenerateOptions {
  bool include_inverses = true;
  PseudogroupTolerances tols;
};

/// Bounded closure: identities on every source, restrictions to declared
/// targets, inverses, and composites whose word length stays within depth.
/// Candidates that match an existing member are dropped; new members enter in
/// (word length, name) order per round until a round adds nothing.
PseudogroupFamily generate(const PseudogroupFamily& family, const SampleGrid& grid,
                           const GenerateOptions& options = {});

struct AxiomReport {
  std::array<Report, 5> axioms;
  Report summary() const;
};

/// Axioms (1)-(5) checked over the family. (1) only covers pairs whose word
/// lengths add up to at most family.depth; (3) and (4) only cover the
/// declared restriction targets and glue tests.
AxiomReport validate_axioms(const PseudogroupFamily& family, const SampleGrid& grid,
                            const PseudogroupTolerances& tols = {});

/// Metric `ah_defect` = max ||D(phi) J(p) - J(phi(p)) D(phi)||_max over grid
/// points of the source whose image stays in the structure's box.
Report check_ah_map(const ACStructure& acs, const LocalMap& map, const SampleGrid& grid,
                    double tol);

/// Upstairs map between two chart domains and a downstairs map of C^m.
struct OverDiagram {
  LocalMap upstairs;
  SpencerChart source_chart;
  SpencerChart target_chart;
  std::vector<Polynomial> downstairs;  ///< m polynomials in m complex variables
  SampleGrid lattice;
};

/// Metric `diagram_defect` = max ||f_dst(Phi(p)) - psi(f_src(p))||_max.
/// Points whose image leaves the target chart are counted; more than 20% of
/// the lattice is a DomainError.
Report check_over_diagram(const OverDiagram& diagram, double tol);

}  // namespace spencerkit

#endif  // SPENCERKIT_PSEUDOGROUP_HPP_
