#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/returns.hpp"
#include "cantor/window.hpp"

namespace cantor {

/// Rokhlin towers whose shapes are (K, eps)-invariant and whose complement
/// is empty (the clopen pipeline): the base is shrunk until every shape
/// passes the exact defect test. Product systems combine per-factor towers
/// into box-shaped ones.
TowerDecomposition urp_towers(const SystemPtr& sys, const FiniteGroupSet& k, double eps);

/// Largest per-shape invariance defect against K.
double worst_shape_defect(const TowerDecomposition& towers, const FiniteGroupSet& k);

struct LevelTowerResult {
  std::vector<std::int64_t> base_indices;   // B inside the window
  std::int64_t height = 0;                  // N
  std::int64_t edge_band = 0;               // excluded band width at each end
  std::int64_t interior_sites = 0;
  std::int64_t covered_sites = 0;
  double complement_fraction = 0.0;         // uncovered fraction of the interior
  double f0_fraction = 0.0;                 // sites where n(sx) != n(x)+1
  double non_integer_fraction = 0.0;
  std::optional<double> bound;              // delta + N(2N+1) delta, when delta given
  bool bound_respected = true;
};

/// Tower base B = (E_0 \ F) cap s^-1(E_1 \ F) cap ... cap s^-(N-1)(E_{N-1} \ F)
/// evaluated on a finite window from a level function n. When the input
/// defect delta is supplied, the report asserts the complement bound
/// delta + N(2N+1) delta on the window interior.
LevelTowerResult build_tower_from_level_function(const OrbitWindow& window,
                                                 const std::vector<double>& n_values,
                                                 std::int64_t height,
                                                 std::optional<double> input_defect = std::nullopt);

}  // namespace cantor
