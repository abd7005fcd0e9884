#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/repmat.hpp"
#include "cantor/returns.hpp"

namespace cantor {

struct TowerAlgebraReport {
  struct Violation {
    int tower = 0;
    std::int64_t level_i = 0, level_j = 0;
    std::string witness;
  };
  /// Generators with mass outside the union of tower bases (straddling).
  std::vector<std::string> support_violations;
  std::int64_t orthogonality_checks = 0;
  /// (a u_i)(u_j* b) != 0 exactly, per tower with base-restricted generators.
  std::vector<Violation> orthogonality_violations;
  double worst_matrix_unit_error = 0.0;  // ||v_i v_j* - delta_ij p|| on the interior
  bool matrix_units_ok = false;          // within tol (edge band excluded)
  bool diagonal_embedding_ok = false;    // formal product respects diag
  double tolerance = 1e-9;
  bool ok() const {
    return support_violations.empty() && orthogonality_violations.empty() && matrix_units_ok &&
           diagonal_embedding_ok;
  }
};

/// The tower-to-matrix-algebra relations: for generators supported on the
/// tower bases, (a u_i)(u_j^* b) = 0 for i != j exactly (clopen
/// disjointness); the matrix units v_i = p u_i satisfy v_i v_j^* =
/// delta_ij p within tolerance on the window interior; and
/// sum u_i^* a_i u_i |-> diag{a_i} respects products formally.
TowerAlgebraReport tower_algebra_check(const TowerDecomposition& towers,
                                       const std::vector<CrossedElement>& generators,
                                       const OrbitWindow& w, double tol = 1e-9);

}  // namespace cantor
