#include "cantor/groupoid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cantor {

SmallGroupoid build_groupoid(const ShapeFunction& s, bool extend_to_full_space) {
  const ShapeValidation v = validate_shape_function(s);
  if (!v.ok()) throw std::invalid_argument("shape function invalid: " + v.detail);

  SmallGroupoid g;
  g.shape_ = s;
  g.sys_ = s.cells[0].cell.system();
  const int d = g.sys_->dim();

  if (extend_to_full_space && !s.domain.is_full()) {
    // Unit-space extension: points off the domain get the trivial shape.
    ShapeCell trivial;
    trivial.shape = FiniteGroupSet::singleton(GroupElement::zero(d));
    trivial.cell = s.domain.complement();
    g.shape_.cells.push_back(trivial);
    g.shape_.domain = Clopen::full(g.sys_, s.domain.radius());
    g.extended_ = true;
  }

  int radius = g.shape_.domain.radius();
  for (const auto& c : g.shape_.cells)
    for (const auto& off : c.shape.elements())
      radius = std::max(radius, c.cell.translated(off).radius());
  g.data_radius_ = radius;

  for (std::size_t i = 0; i < g.shape_.cells.size(); ++i) {
    const auto& c = g.shape_.cells[i];
    for (const auto& off : c.shape.elements()) {
      SmallGroupoid::Piece p;
      p.rep = static_cast<int>(i);
      p.offset = off;
      p.cell = c.cell.translated(off).lifted(radius);
      g.pieces_.push_back(std::move(p));
    }
  }

  // Atom lookup table; overlap detection doubles as the partition check.
  for (std::size_t pi = 0; pi < g.pieces_.size(); ++pi)
    for (const auto& w : g.pieces_[pi].cell.words()) {
      auto [it, inserted] = g.piece_of_atom_.emplace(w, static_cast<int>(pi));
      if (!inserted)
        throw std::invalid_argument("shape pieces overlap at atom " + g.sys_->display(w) +
                                    " (pieces " + std::to_string(it->second) + ", " +
                                    std::to_string(pi) + ")");
    }

  std::set<GroupElement> supp;
  for (const auto& c : g.shape_.cells)
    for (const auto& a : c.shape.elements())
      for (const auto& b : c.shape.elements()) supp.insert(a - b);
  g.supp_ = FiniteGroupSet(std::vector<GroupElement>(supp.begin(), supp.end()));
  return g;
}

SmallGroupoid SmallGroupoid::with_tampered_piece(std::size_t piece, int rep,
                                                 const GroupElement& offset) const {
  SmallGroupoid g = *this;
  g.pieces_.at(piece).rep = rep;
  g.pieces_.at(piece).offset = offset;
  return g;
}

int SmallGroupoid::piece_index(const Word& w, int R) const {
  const Word atom = sys_->trace_word(w, R, GroupElement::zero(sys_->dim()), data_radius_);
  auto it = piece_of_atom_.find(atom);
  return it == piece_of_atom_.end() ? -1 : it->second;
}

FiniteGroupSet SmallGroupoid::shape_at(const Word& w, int R) const {
  const int pi = piece_index(w, R);
  if (pi < 0) throw std::invalid_argument("point outside the groupoid domain");
  const Piece& p = pieces_[pi];
  return shape_.cells[p.rep].shape.translated(-p.offset);
}

bool SmallGroupoid::member(const Word& w, int R, const GroupElement& g) const {
  if (piece_index(w, R) < 0) return false;
  const Word moved = sys_->trace_word(w, R, g, data_radius_);
  const int pj = piece_index(moved, data_radius_);
  if (pj < 0) return false;
  const Piece& p = pieces_[pj];
  // landing piece must be reachable: offset - g stays inside the shape
  return shape_.cells[p.rep].shape.contains(p.offset - g);
}

Clopen SmallGroupoid::y_gamma(const GroupElement& g) const {
  Clopen y = Clopen::empty(sys_, data_radius_);
  for (const auto& p : pieces_)
    if (!shape_.cells[p.rep].shape.contains(p.offset - g)) y = set_union(y, p.cell);
  return y;
}

OrbitResult orbit(const SmallGroupoid& g, const Word& w, int R) {
  OrbitResult res;
  const FiniteGroupSet s = g.shape_at(w, R);
  res.offsets = s.elements();
  res.point_radius = g.data_radius();
  std::set<Word> pts;
  for (const auto& off : res.offsets)
    pts.insert(g.system()->trace_word(w, R, off, g.data_radius()));
  res.points.assign(pts.begin(), pts.end());
  res.capped = res.points.size() < res.offsets.size();
  return res;
}

AxiomReport verify_groupoid_axioms(const SmallGroupoid& g) {
  AxiomReport rep;
  const SystemPtr& sys = g.system();
  const FiniteGroupSet supp2 = set_product(g.supp(), g.supp());
  int rbig = g.data_radius();
  for (const auto& e : supp2.elements())
    rbig = std::max(rbig, sys->needed_radius(g.data_radius(), e));

  auto note = [&](const std::string& s) {
    if (rep.witnesses.size() < 16) rep.witnesses.push_back(s);
  };

  for (const auto& w : sys->admissible(rbig)) {
    ++rep.atoms_checked;
    const FiniteGroupSet sx = g.shape_at(w, rbig);

    // (i) unit arrows
    if (!g.member(w, rbig, GroupElement::zero(sys->dim()))) {
      ++rep.violations_unit;
      note("unit arrow missing at " + sys->display(w));
    }

    // membership route consistency over the whole support
    for (const auto& gamma : g.supp().elements()) {
      ++rep.membership_checks;
      if (g.member(w, rbig, gamma) != sx.contains(gamma)) {
        ++rep.violations_membership;
        note("Y_gamma route disagrees at " + sys->display(w) + ", gamma=" + gamma.str());
      }
    }

    for (const auto& gamma : sx.elements()) {
      const Word wg = sys->trace_word(w, rbig, gamma, g.data_radius());
      // (iv) equivariance S(x g) = S(x) - gamma
      const FiniteGroupSet sxg = g.shape_at(wg, g.data_radius());
      if (!(sxg == sx.translated(-gamma))) {
        ++rep.violations_equivariance;
        note("equivariance fails at " + sys->display(w) + ", gamma=" + gamma.str());
      }
      // (ii) inverse
      if (!sxg.contains(-gamma)) {
        ++rep.violations_inverse;
        note("inverse missing at " + sys->display(w) + ", gamma=" + gamma.str());
      }
      // (iii) composition
      for (const auto& delta : sxg.elements()) {
        if (!sx.contains(gamma + delta)) {
          ++rep.violations_composition;
          note("composition fails at " + sys->display(w) + ": " + gamma.str() + " then " +
               delta.str());
        }
      }
    }
  }
  return rep;
}

OrbitInvarianceReport orbit_invariance_report(const SmallGroupoid& g, const FiniteGroupSet& k,
                                              double eps) {
  OrbitInvarianceReport rep;
  for (std::size_t i = 0; i < g.pieces().size(); ++i) {
    const auto& p = g.pieces()[i];
    const FiniteGroupSet shape = g.shape().cells[p.rep].shape.translated(-p.offset);
    OrbitInvarianceRow row;
    row.piece = static_cast<int>(i);
    row.shape = shape.str();
    row.defect = invariance_defect(shape, k);
    rep.worst = std::max(rep.worst, row.defect);
    rep.rows.push_back(std::move(row));
  }
  rep.pass = rep.worst < eps;
  return rep;
}

bool BoundaryReport::all_trivial() const {
  for (const auto& d : decompositions)
    if (!d.trivial()) return false;
  return true;
}

BoundaryReport boundary_decomposition_check(const ShapeFunction& s,
                                            const std::vector<BoundaryAdjacency>& adjacency) {
  BoundaryReport rep;
  // Clopen cells: closures are the cells themselves, so it suffices that the
  // translate pieces are pairwise disjoint (checked exactly).
  rep.cells_pairwise_disjoint = true;
  std::vector<Clopen> pieces;
  for (const auto& c : s.cells)
    for (const auto& g : c.shape.elements()) pieces.push_back(c.cell.translated(g));
  for (std::size_t i = 0; i < pieces.size() && rep.cells_pairwise_disjoint; ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (!pieces[i].disjoint_from(pieces[j])) {
        rep.cells_pairwise_disjoint = false;
        break;
      }

  // Every genuine cell decomposes trivially in the clopen pipeline.
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    BoundaryDecomposition d;
    d.rep = static_cast<int>(i);
    d.parts.push_back({GroupElement::zero(s.cells[i].shape.rank()), s.cells[i].shape});
    rep.decompositions.push_back(std::move(d));
  }

  // Synthetic limit points: recover F = |_| g_i F_i greedily from the
  // declared shape values.
  for (const auto& adj : adjacency) {
    const FiniteGroupSet& f = s.cells.at(adj.rep).shape;
    BoundaryDecomposition d;
    d.rep = adj.rep;
    d.parts.clear();
    std::set<GroupElement> covered;
    for (const auto& gamma : f.elements()) {
      if (covered.count(gamma)) continue;
      auto it = adj.limit_shapes.find(gamma);
      if (it == adj.limit_shapes.end())
        throw std::invalid_argument("adjacency data missing shape at " + gamma.str());
      const FiniteGroupSet& fi = it->second;
      for (const auto& h : fi.elements()) {
        const GroupElement covered_elem = gamma + h;
        if (!f.contains(covered_elem))
          throw std::invalid_argument("declared limit shape leaves the cell shape at " +
                                      covered_elem.str());
        covered.insert(covered_elem);
      }
      d.parts.push_back({gamma, fi});
    }
    if (covered.size() != f.size())
      throw std::invalid_argument("declared limit shapes do not cover the cell shape");
    rep.decompositions[static_cast<std::size_t>(adj.rep)] = d;
  }
  return rep;
}

}  // namespace cantor
