#pragma once

#include <string>
#include <vector>

#include "cantor/tiling.hpp"

namespace cantor {

/// Shape function S: Omega -> finite subsets of Z^d, stored by orbit
/// representatives: pairs (F_i, Z_i) with e in F_i and
///     Omega = union over i of union over g in F_i of Z_i * g.
/// Points of Z_i * g carry shape F_i - g. Lower semicontinuity is automatic
/// (the data is locally constant), and with pieces stored as translates of
/// the representative cells, equivariance is built into the representation.
struct ShapeCell {
  FiniteGroupSet shape;  // F_i, contains the identity
  Clopen cell;           // Z_i = {x : S(x) = F_i}
};

struct ShapeFunction {
  std::vector<ShapeCell> cells;
  Clopen domain;
};

/// S(x) = the tile of T(x) containing the identity; representatives are the
/// offset-zero cells of the tiling.
ShapeFunction shape_from_tiling(const Tiling& t);

struct ShapeValidation {
  bool identity_in_shapes = false;
  bool cells_nonempty = false;
  bool partition_ok = false;  // translate pieces partition the domain exactly
  std::string detail;
  bool ok() const { return identity_in_shapes && cells_nonempty && partition_ok; }
};

ShapeValidation validate_shape_function(const ShapeFunction& s);

}  // namespace cantor
