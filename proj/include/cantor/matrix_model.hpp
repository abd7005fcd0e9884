#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cantor/crossed.hpp"
#include "cantor/groupoid.hpp"

namespace cantor {

/// Direct-sum matrix model of the groupoid C*-algebra: one block per shape
/// representative, size |F_i|, entries locally constant on the cell Z_i.
/// In the Cantor pipeline every boundary cell is empty, so the model is a
/// plain direct sum. The block matrix of a crossed element at a base atom x
/// carries the entry
///     M(g1, g2) = f_{g2 - g1}(x * g1),    g1, g2 in F_i,
/// which is a *-homomorphism for the covariance convention used here.
struct GroupoidMatrixModel {
  SmallGroupoid groupoid;
  int block_radius = 0;

  struct Block {
    int rep = 0;
    FiniteGroupSet shape;
    std::vector<Word> cell_atoms;  // atoms of Z_rep at block_radius
  };
  std::vector<Block> blocks;
};

/// coefficient_radius_hint: largest coefficient radius the model will be
/// asked to evaluate (the block radius is enlarged accordingly).
GroupoidMatrixModel build_matrix_model(const SmallGroupoid& g, int coefficient_radius_hint = 0);

/// A crossed element is supported on the groupoid when every coefficient
/// f_g vanishes off {x : g in S(x)}.
bool supported_on_groupoid(const SmallGroupoid& g, const CrossedElement& a,
                           std::string* why = nullptr);

/// pi_{Z_F}(a) evaluated at a base-cell atom of the given block.
Eigen::MatrixXd pi_block(const GroupoidMatrixModel& m, const CrossedElement& a, int block,
                         const Word& cell_atom);

/// Reconstructs the coefficient value f_g(y) from the block matrices, for
/// any atom y with g in S(y); the block-joint model is injective on
/// groupoid-supported elements.
double reconstruct_coefficient(const GroupoidMatrixModel& m, const CrossedElement& a,
                               const Word& atom, int R, const GroupElement& g);

/// |Orbit(x) cap E| for x in the given atom.
int orbit_count_in(const SmallGroupoid& g, const Clopen& e, const Word& atom, int R);

/// Matrix rank of pi(phi_E)(x), cross-checked against the orbit count.
struct RankPair {
  int matrix_rank = 0;
  int orbit_count = 0;
  bool agree() const { return matrix_rank == orbit_count; }
};
RankPair rank_of_open_set(const GroupoidMatrixModel& m, const Clopen& e, int block,
                          const Word& cell_atom);

}  // namespace cantor
