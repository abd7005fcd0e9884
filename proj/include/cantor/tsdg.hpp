#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/crossed.hpp"
#include "cantor/measure.hpp"
#include "cantor/repmat.hpp"
#include "cantor/returns.hpp"

namespace cantor {

/// The tower-subalgebra construction: nested interiors of the tower shapes
/// against powers of the support set N give a level function l on each
/// shape, the ramp element
///     p = sum_s sum_{l >= 1} sum_{gamma in shape_s, l(gamma) = l}
///         ((l-1)/L) 1_{B_s gamma},
/// and coefficients snapped to constant values on the tower cells. In the
/// Cantor pipeline the open covers degenerate to the clopen cell partition,
/// so p and the snapped elements are exact locally constant data.
struct TsdgConstruction {
  SystemPtr sys;
  TowerDecomposition towers;
  FiniteGroupSet support;  // N: symmetric, contains e
  std::int64_t ramp_length = 0;  // L
  double delta = 0.0;
  double coeff_bound = 1.0;  // M = max(1, coefficient norms)

  std::vector<std::vector<int>> level_of;               // per tower, per shape element
  std::vector<std::vector<std::int64_t>> level_counts;  // per tower, levels 0..L+1

  LcReal p;
  std::vector<CrossedElement> f_original, f_snapped;
  LcReal h_original, h_snapped;
  Clopen constraint_set;  // F: h >= 3/4 on it
  int snap_radius = 0;
  double worst_interior_fraction = 0.0;  // max_s |shape \ int_{N^{L+1}}| / |shape|
  /// The proof's bookkeeping bound L > 8 M |N| / delta. Recorded, not
  /// enforced: short-ramp runs are legitimate and their property report
  /// carries the honest measurements.
  bool large_l_ok = false;
};

TsdgConstruction tsdg_construct(const SystemPtr& sys, const TowerDecomposition& towers,
                                const std::vector<CrossedElement>& f_list, const LcReal& h,
                                const Clopen& constraint_set, double delta, std::int64_t ramp_length,
                                const FiniteGroupSet& support);

/// Membership in the tower block algebra C: every coefficient atom lies in
/// a tower cell B_s * g1 whose column move g1 + gamma stays inside the
/// shape.
bool in_tower_block_algebra(const TsdgConstruction& c, const CrossedElement& a,
                            std::string* why = nullptr);

struct TsdgReport {
  struct Row {
    std::string property;
    double bound = 0.0;
    double measured = 0.0;
    bool pass = false;
    std::string note;
  };
  std::vector<Row> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Property report for the construction: perturbation norms, ramp
/// commutators, membership in C, level-set measures, and rank counts.
TsdgReport tsdg_verify(const TsdgConstruction& c, const InvariantMeasure& mu,
                       const OrbitWindow& w);

}  // namespace cantor
