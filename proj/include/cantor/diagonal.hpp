#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/lcfn.hpp"
#include "cantor/measure.hpp"
#include "cantor/returns.hpp"

namespace cantor {

/// Diagonal slots of a tower block model: block s carries copies * |shape_s|
/// nonnegative locally constant entry functions, read off at the base-cell
/// atoms.
struct TowerDiagonalModel {
  TowerDecomposition towers;
  int copies = 1;
  int eval_radius = 0;
  struct Block {
    std::vector<Word> base_atoms;
    std::vector<GroupElement> levels;
  };
  std::vector<Block> blocks;
};

TowerDiagonalModel make_tower_diagonal_model(const TowerDecomposition& towers, int copies = 1,
                                             int radius_hint = 0);

struct DiagonalElement {
  // blocks[s] has copies * |levels_s| entry functions (copy-major order).
  std::vector<std::vector<LcReal>> blocks;
};

/// diag(f(x g))_{g in shape}, repeated per copy: the image of f under the
/// tower embedding.
DiagonalElement diagonal_of_function(const TowerDiagonalModel& m, const LcReal& f);
DiagonalElement diagonal_ones(const TowerDiagonalModel& m);
/// Entrywise (t - eps)_+.
DiagonalElement cut_down(const DiagonalElement& a, double eps);

/// Number of strictly positive entries at the given base atom.
int diagonal_rank_at(const TowerDiagonalModel& m, const DiagonalElement& a, int block,
                     std::size_t atom);

struct RankCompareReport {
  struct Row {
    int block = 0;
    std::size_t atom = 0;
    int rank_a = 0;
    int rank_b = 0;
  };
  std::vector<Row> rows;
  bool leq_pass = false;      // rank(a) <= rank(b) cellwise (sufficient at dim 0)
  bool quarter_pass = false;  // rank(a) < lambda rank(b) cellwise
  double lambda = 0.25;
};

RankCompareReport rank_compare_diagonal(const TowerDiagonalModel& m, const DiagonalElement& a,
                                        const DiagonalElement& b, double lambda = 0.25);

/// Per-cell contraction matrices s with s^T diag(b) s = diag((a-eps)_+),
/// built by support matching (largest entries paired first).
struct CuntzWitness {
  double eps = 0.0;
  struct Cell {
    int block = 0;
    std::size_t atom = 0;
    Eigen::MatrixXd s;
    double error = 0.0;  // ||s^T b s - (a-eps)_+|| on this cell
  };
  std::vector<Cell> cells;
  double max_error = 0.0;
  double max_norm = 0.0;  // largest ||s||
};

CuntzWitness cuntz_witness_diagonal(const TowerDiagonalModel& m, const DiagonalElement& a,
                                    const DiagonalElement& b, double eps);

struct DivisibleElementResult {
  TowerDiagonalModel model;
  DiagonalElement h;         // diag{h0, 1 x floor(r)}
  Clopen f;                  // h0^{-1}(1)
  int integer_part = 0;
  double d_mu_level_count = 0.0;  // route 1: level counts x base measures
  double d_mu_clopen = 0.0;       // route 2: measure of the clopen union + floor(r)
  double target = 0.0;
  std::vector<std::int64_t> selected_levels;  // |Gamma'_s| per tower
};

/// h = diag{h0, 1, ..., 1} with h0 the indicator of ceil({r} |shape_s|)
/// levels per tower, so |d_mu(h) - r| < eps; rejected with the required
/// height when the towers are too short to reach the accuracy.
DivisibleElementResult build_divisible_element(const SystemPtr& sys,
                                               const TowerDecomposition& towers,
                                               const InvariantMeasure& mu, double r, double eps);

}  // namespace cantor
