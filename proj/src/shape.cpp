#include "cantor/shape.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cantor {

ShapeFunction shape_from_tiling(const Tiling& t) {
  ShapeFunction s;
  const int d = t.sys->dim();
  const GroupElement zero = GroupElement::zero(d);
  // One representative per tile: its offset-zero cell. Tiles with equal
  // shape sets share a representative (their cells merge).
  std::map<FiniteGroupSet, Clopen> reps;
  for (const auto& c : t.cells) {
    if (!(c.offset == zero)) continue;
    const FiniteGroupSet& f = t.tiles[c.tile];
    if (!f.contains(zero)) throw std::invalid_argument("tile does not contain the identity");
    auto it = reps.find(f);
    if (it == reps.end())
      reps.emplace(f, c.cell);
    else
      it->second = set_union(it->second, c.cell);
  }
  int radius = 0;
  for (auto& [f, cell] : reps) {
    s.cells.push_back({f, cell});
    radius = std::max(radius, cell.radius());
  }
  Clopen domain = Clopen::empty(t.sys, radius);
  for (const auto& sc : s.cells)
    for (const auto& g : sc.shape.elements()) domain = set_union(domain, sc.cell.translated(g));
  s.domain = domain;
  return s;
}

ShapeValidation validate_shape_function(const ShapeFunction& s) {
  ShapeValidation v;
  if (s.cells.empty()) {
    v.detail = "no cells";
    return v;
  }
  const SystemPtr sys = s.cells[0].cell.system();
  const GroupElement zero = GroupElement::zero(sys->dim());

  v.identity_in_shapes = true;
  for (const auto& c : s.cells)
    if (!c.shape.contains(zero)) {
      v.identity_in_shapes = false;
      v.detail = "shape " + c.shape.str() + " misses the identity";
    }

  v.cells_nonempty = true;
  for (const auto& c : s.cells)
    if (c.cell.is_empty()) {
      v.cells_nonempty = false;
      v.detail = "empty representative cell for shape " + c.shape.str();
    }

  // Exact partition: the translate pieces tile the domain without overlap.
  int radius = s.domain.radius();
  std::vector<Clopen> pieces;
  for (const auto& c : s.cells)
    for (const auto& g : c.shape.elements()) {
      pieces.push_back(c.cell.translated(g));
      radius = std::max(radius, pieces.back().radius());
    }
  std::size_t total = 0;
  Clopen all = Clopen::empty(sys, radius);
  for (const auto& p : pieces) {
    const Clopen q = p.lifted(radius);
    total += q.words().size();
    all = set_union(all, q);
  }
  v.partition_ok = (all == s.domain) && total == all.words().size();
  if (!v.partition_ok && v.detail.empty())
    v.detail = "translate pieces do not partition the domain";
  return v;
}

}  // namespace cantor
