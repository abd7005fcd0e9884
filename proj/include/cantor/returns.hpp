#pragma once

#include <cstdint>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/group.hpp"
#include "cantor/measure.hpp"

namespace cantor {

/// First-return decomposition of a clopen base Y: cells Z_k of points whose
/// first return to Y happens at time J_1 < ... < J_K, partitioning Y.
struct ReturnData {
  Clopen base;
  struct Entry {
    std::int64_t time;
    Clopen cell;
  };
  std::vector<Entry> returns;  // increasing time

  std::int64_t min_return() const { return returns.front().time; }
  std::int64_t max_return() const { return returns.back().time; }
};

/// Exact first-return analysis for a minimal Z-system (cycles admitted as
/// brute-force oracles). Termination is certified by a kind-specific
/// horizon; completeness by exhausting Y.
ReturnData first_return_analysis(const SystemPtr& sys, const Clopen& y);

struct Tower {
  Clopen base;
  FiniteGroupSet shape;  // contains the identity
};

struct TowerDecomposition {
  std::vector<Tower> towers;
  Clopen complement;

  std::int64_t min_height() const;
  std::int64_t max_height() const;
};

struct PartitionCheck {
  bool pairwise_disjoint = false;
  bool covers = false;
  bool boundary_cells_empty = false;  // the clopen specialization: every W-set empty
  bool ok() const { return pairwise_disjoint && covers && boundary_cells_empty; }
};

/// Kakutani-Rokhlin partition over the base Y: towers (Z_k, {0..J_k-1})
/// with empty complement.
TowerDecomposition kakutani_rokhlin(const SystemPtr& sys, const Clopen& y);

/// Exactness of the tower partition, by exhaustive clopen arithmetic.
PartitionCheck verify_tower_partition(const TowerDecomposition& towers);

/// Kac identity data: sum of height * base-measure, which must be 1 for an
/// exact partition with empty complement.
double kac_sum(const TowerDecomposition& towers, const InvariantMeasure& mu);

}  // namespace cantor
