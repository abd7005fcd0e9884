#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/returns.hpp"

namespace cantor {

/// Dynamical tiling: finitely many tile shapes plus a locally constant
/// assignment of (tile, offset) to phase-space cells. A point x in a cell
/// with entry (k, o) lies at offset o inside an instance of tile k, so the
/// tile of T(x) containing the identity is tiles[k] - o.
struct Tiling {
  SystemPtr sys;
  std::vector<FiniteGroupSet> tiles;
  struct Cell {
    Clopen cell;
    int tile = 0;
    GroupElement offset;
  };
  std::vector<Cell> cells;  // partition of X
  int continuity_radius = 0;
};

/// Tiling of Z by the return-time intervals of a Kakutani-Rokhlin base.
Tiling tiling_from_returns(const ReturnData& rd);

/// Coordinatewise product of Z-tilings (box tiles, product cells).
Tiling product_tiling(const SystemPtr& product_sys, const std::vector<Tiling>& factors);

struct TilingReport {
  std::vector<double> tile_defects;   // per tile, against K
  double worst_defect = 0.0;
  bool invariance_pass = false;       // all defects < eps
  bool partition_of_space = false;    // cells partition X exactly
  std::int64_t samples_checked = 0;
  std::int64_t exactness_failures = 0;  // box sites not covered exactly once
  bool equivariance_ok = false;
  int continuity_radius = 0;
  std::vector<std::string> notes;
  bool exactness_ok() const { return exactness_failures == 0; }
};

/// Per-tile (K, eps)-invariance, exact partition of the verification box on
/// sampled configurations, and the equivariance T(x*g) = T(x)*g^-1 checked
/// on overlapping windows.
TilingReport verify_tiling(const Tiling& t, const FiniteGroupSet& k, double eps,
                           const FiniteGroupSet& box, std::int64_t samples, std::uint64_t seed);

}  // namespace cantor
