#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cantor/crossed.hpp"
#include "cantor/returns.hpp"

namespace cantor {

/// The orbit-cutting subalgebra A_Y = C*{f, ug : g|_Y = 0} in its block
/// matrix picture over the first-return cells: block k consists of
/// J_k x J_k matrix functions on Z_k, with an element sum_g f_g u_g mapped
/// entrywise by
///     M(row, col)(x) = f_{col-row}(x * row),   row, col in {0, .., J_k-1},
/// over the base-anchored column {x, sx, ..., s^{J_k-1}x}. Functions land
/// on the diagonal (f(x*i)) and u g on the off-diagonal, matching the
/// classical description up to transposition and a column shift (the
/// action convention here anchors each column at its base point, which is
/// what the vanishing conditions preserve).
struct AyModel {
  ReturnData rd;
  int eval_radius = 0;  // atoms of Z_k are enumerated at this radius

  struct Block {
    std::int64_t height = 0;
    std::vector<Word> cell_atoms;  // atoms of Z_k at eval_radius
  };
  std::vector<Block> blocks;
};

AyModel make_ay_model(const SystemPtr& sys, const Clopen& y, int coefficient_radius_hint = 0);

/// Vanishing conditions cutting A_Y out of the crossed product: for g > 0
/// the coefficient f_g vanishes on Y*(-1), ..., Y*(-g); for g < 0 on
/// Y, Y*1, ..., Y*(|g|-1).
bool in_ay_subalgebra(const AyModel& m, const CrossedElement& a, std::string* why = nullptr);

/// Per-block, per-cell-atom matrices of the element. Throws when the
/// element fails the A_Y membership conditions.
std::vector<std::vector<Eigen::MatrixXd>> ay_map(const AyModel& m, const CrossedElement& a);

}  // namespace cantor
