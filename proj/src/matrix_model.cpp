#include "cantor/matrix_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

GroupoidMatrixModel build_matrix_model(const SmallGroupoid& g, int coefficient_radius_hint) {
  GroupoidMatrixModel m;
  m.groupoid = g;
  const SystemPtr& sys = g.system();
  int radius = g.data_radius();
  for (const auto& c : g.shape().cells)
    for (const auto& off : c.shape.elements()) {
      radius = std::max(radius, sys->needed_radius(g.data_radius(), off));
      radius = std::max(radius, sys->needed_radius(coefficient_radius_hint, off));
    }
  m.block_radius = radius;
  for (std::size_t i = 0; i < g.shape().cells.size(); ++i) {
    GroupoidMatrixModel::Block b;
    b.rep = static_cast<int>(i);
    b.shape = g.shape().cells[i].shape;
    b.cell_atoms = g.shape().cells[i].cell.lifted(radius).words();
    m.blocks.push_back(std::move(b));
  }
  return m;
}

bool supported_on_groupoid(const SmallGroupoid& g, const CrossedElement& a, std::string* why) {
  const SystemPtr& sys = g.system();
  for (const auto& [gamma, f] : a.coefficients()) {
    // Allowed region for the jump gamma: pieces whose shape contains it.
    Clopen allowed = Clopen::empty(sys, g.data_radius());
    for (const auto& p : g.pieces()) {
      const FiniteGroupSet shape = g.shape().cells[p.rep].shape.translated(-p.offset);
      if (shape.contains(gamma)) allowed = set_union(allowed, p.cell);
    }
    if (!f.support().subset_of(allowed)) {
      if (why)
        *why = "coefficient of u_" + gamma.str() + " has mass off the groupoid";
      return false;
    }
  }
  return true;
}

Eigen::MatrixXd pi_block(const GroupoidMatrixModel& m, const CrossedElement& a, int block,
                         const Word& cell_atom) {
  std::string why;
  if (!supported_on_groupoid(m.groupoid, a, &why))
    throw std::invalid_argument("pi_block: " + why);
  const auto& b = m.blocks.at(block);
  const SystemPtr& sys = m.groupoid.system();
  const auto& elems = b.shape.elements();
  for (const auto& [gamma, f] : a.coefficients())
    for (const auto& el : elems)
      if (sys->needed_radius(f.radius(), el) > m.block_radius)
        throw std::invalid_argument("pi_block: rebuild the model with coefficient_radius_hint >= " +
                                    std::to_string(f.radius()));
  const int n = static_cast<int>(elems.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GroupElement jump = elems[j] - elems[i];
      const LcReal* f = a.coefficient(jump);
      if (!f) continue;
      out(i, j) = f->value_at(sys->trace_word(cell_atom, m.block_radius, elems[i], f->radius()),
                              f->radius());
    }
  return out;
}

double reconstruct_coefficient(const GroupoidMatrixModel& m, const CrossedElement& a,
                               const Word& atom, int R, const GroupElement& g) {
  const SmallGroupoid& gr = m.groupoid;
  const int pi = gr.piece_index(atom, R);
  if (pi < 0) throw std::invalid_argument("reconstruct: atom outside the unit space");
  const auto& piece = gr.pieces()[pi];
  const auto& shape = gr.shape().cells[piece.rep].shape;
  if (!shape.contains(piece.offset + g))
    throw std::invalid_argument("reconstruct: jump leaves the orbit");
  // find the block and a base atom whose translate by the offset is `atom`
  const auto& block = m.blocks.at(piece.rep);
  const auto& elems = block.shape.elements();
  const auto row = std::find(elems.begin(), elems.end(), piece.offset);
  const auto col = std::find(elems.begin(), elems.end(), piece.offset + g);
  const SystemPtr& sys = gr.system();
  for (const auto& base_atom : block.cell_atoms) {
    const Word moved = sys->trace_word(base_atom, m.block_radius, piece.offset, gr.data_radius());
    if (moved == sys->trace_word(atom, R, GroupElement::zero(sys->dim()), gr.data_radius())) {
      const Eigen::MatrixXd mat = pi_block(m, a, piece.rep, base_atom);
      return mat(row - elems.begin(), col - elems.begin());
    }
  }
  throw std::logic_error("reconstruct: no base atom matches (internal)");
}

int orbit_count_in(const SmallGroupoid& g, const Clopen& e, const Word& atom, int R) {
  const SystemPtr& sys = g.system();
  const FiniteGroupSet s = g.shape_at(atom, R);
  int count = 0;
  for (const auto& off : s.elements()) {
    const Word moved = sys->trace_word(atom, R, off, e.radius());
    if (e.contains_word(moved)) ++count;
  }
  return count;
}

RankPair rank_of_open_set(const GroupoidMatrixModel& m, const Clopen& e, int block,
                          const Word& cell_atom) {
  RankPair rp;
  const CrossedElement phi = CrossedElement::indicator(e);
  const Eigen::MatrixXd mat = pi_block(m, phi, block, cell_atom);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
  lu.setThreshold(1e-9);
  rp.matrix_rank = static_cast<int>(lu.rank());
  rp.orbit_count = orbit_count_in(m.groupoid, e, cell_atom, m.block_radius);
  return rp;
}

}  // namespace cantor
