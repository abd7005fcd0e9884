#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/groupoid.hpp"
#include "cantor/measure.hpp"

namespace cantor {

/// Subequivalence witness: a clopen partition A = |_| A_i with elements
/// g_i such that the translates A_i * g_i are disjoint subsets of B.
struct SubequivalenceWitness {
  std::vector<std::pair<Clopen, GroupElement>> pieces;
};

struct WitnessValidation {
  bool partitions_a = false;
  bool images_disjoint = false;
  bool images_in_b = false;
  bool ok() const { return partitions_a && images_disjoint && images_in_b; }
};

WitnessValidation validate_witness(const SubequivalenceWitness& w, const Clopen& a,
                                   const Clopen& b);

struct CompareResult {
  std::optional<SubequivalenceWitness> witness;
  int refine_radius = 0;          // the atom radius the solver worked at
  std::int64_t atoms_matched = 0;
  std::string not_found_reason;   // "window-limited at (radius, window)"; never a counterexample
  bool found() const { return witness.has_value(); }
};

/// Exact subequivalence solver: refines A into atoms at a common radius and
/// matches them into B-atoms by deterministic augmenting paths, preferring
/// translations of smaller norm (ties broken lexicographically). A returned
/// witness is exactly valid; NotFound is always relative to the radius and
/// translation window.
CompareResult dynamical_compare(const SystemPtr& sys, const Clopen& a, const Clopen& b,
                                const FiniteGroupSet& translations);

struct MeasureGapResult {
  bool holds = false;
  double lhs = 0.0;  // mu(E)
  double rhs = 0.0;  // lambda mu(F)
  double error_band = 0.0;  // nonzero in empirical mode
};

/// mu(E) < lambda mu(F) for the exact invariant measure (error band
/// reported for empirical measures).
MeasureGapResult measure_gap_check(const InvariantMeasure& mu, const Clopen& e, const Clopen& f,
                                   double lambda);

struct QuarterCriterionReport {
  bool first_inequality = false;   // |Orb cap E| < lambda |Orb cap F| on every atom
  bool second_inequality = false;  // 1/|Orb(x0)| < lambda |Orb(x) cap F| / |Orb(x)|
  double min_slack_first = 0.0;    // min over atoms of lambda|Orb cap F| - |Orb cap E|
  double min_slack_second = 0.0;
  std::int64_t atoms_checked = 0;
  bool pass() const { return first_inequality && second_inequality; }
};

/// The quarter-criterion of rank comparison over a small groupoid, checked
/// exhaustively over all atom pairs. lambda defaults to the proved 1/4.
QuarterCriterionReport quarter_criterion(const SmallGroupoid& g, const Clopen& e, const Clopen& f,
                                         double lambda = 0.25);

}  // namespace cantor
