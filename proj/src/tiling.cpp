#include "cantor/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cantor/window.hpp"

namespace cantor {

Tiling tiling_from_returns(const ReturnData& rd) {
  Tiling t;
  t.sys = rd.base.system();
  for (std::size_t k = 0; k < rd.returns.size(); ++k) {
    const auto& r = rd.returns[k];
    t.tiles.push_back(FiniteGroupSet::interval(0, r.time - 1));
    for (std::int64_t i = 0; i < r.time; ++i) {
      Tiling::Cell c;
      c.cell = r.cell.translated(GroupElement::z(i));
      c.tile = static_cast<int>(k);
      c.offset = GroupElement::z(i);
      t.continuity_radius = std::max(t.continuity_radius, c.cell.radius());
      t.cells.push_back(std::move(c));
    }
  }
  return t;
}

Tiling product_tiling(const SystemPtr& sys, const std::vector<Tiling>& factors) {
  if (static_cast<int>(factors.size()) != sys->dim())
    throw std::invalid_argument("product_tiling: one factor tiling per axis required");
  const int d = sys->dim();
  Tiling t;
  t.sys = sys;
  // tiles: all combinations of factor tiles
  std::vector<std::vector<int>> tile_of;  // flattened index per combination
  std::vector<std::size_t> tidx(d, 0);
  std::map<std::vector<std::size_t>, int> combo_tile;
  for (;;) {
    std::vector<GroupElement> elems{GroupElement::zero(d)};
    for (int a = 0; a < d; ++a) {
      std::vector<GroupElement> next;
      for (const auto& g : elems)
        for (const auto& h : factors[a].tiles[tidx[a]].elements()) {
          GroupElement e = g;
          e.coords[a] = h.coords[0];
          next.push_back(e);
        }
      elems = std::move(next);
    }
    combo_tile[tidx] = static_cast<int>(t.tiles.size());
    t.tiles.push_back(FiniteGroupSet(std::move(elems)));
    int a = d - 1;
    while (a >= 0 && ++tidx[a] == factors[a].tiles.size()) tidx[a--] = 0;
    if (a < 0) break;
  }
  // cells: products of factor cells
  std::vector<std::size_t> cidx(d, 0);
  for (;;) {
    int radius = 0;
    for (int a = 0; a < d; ++a)
      radius = std::max(radius, factors[a].cells[cidx[a]].cell.radius());
    std::vector<Word> words{Word()};
    GroupElement offset = GroupElement::zero(d);
    std::vector<std::size_t> combo(d);
    for (int a = 0; a < d; ++a) {
      const auto& fc = factors[a].cells[cidx[a]];
      const Clopen lifted = fc.cell.lifted(radius);
      std::vector<Word> next;
      for (const auto& w : words)
        for (const auto& p : lifted.words()) next.push_back(w + p);
      words = std::move(next);
      offset.coords[a] = fc.offset.coords[0];
      combo[a] = static_cast<std::size_t>(fc.tile);
    }
    Tiling::Cell c;
    c.cell = Clopen::from_words(sys, radius, std::move(words));
    c.tile = combo_tile.at(combo);
    c.offset = offset;
    t.continuity_radius = std::max(t.continuity_radius, radius);
    t.cells.push_back(std::move(c));
    int a = d - 1;
    while (a >= 0 && ++cidx[a] == factors[a].cells.size()) cidx[a--] = 0;
    if (a < 0) break;
  }
  return t;
}

namespace {

// Cell index of the atom, or -1.
int cell_of(const Tiling& t, const Word& w, int R) {
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    if (t.cells[i].cell.contains_atom(w, R)) return static_cast<int>(i);
  return -1;
}

}  // namespace

TilingReport verify_tiling(const Tiling& t, const FiniteGroupSet& k, double eps,
                           const FiniteGroupSet& box, std::int64_t samples, std::uint64_t seed) {
  TilingReport rep;
  rep.continuity_radius = t.continuity_radius;
  for (const auto& tile : t.tiles) {
    rep.tile_defects.push_back(invariance_defect(tile, k));
    rep.worst_defect = std::max(rep.worst_defect, rep.tile_defects.back());
  }
  rep.invariance_pass = rep.worst_defect < eps;

  // Exact partition of the phase space by the cells.
  {
    int radius = 0;
    for (const auto& c : t.cells) radius = std::max(radius, c.cell.radius());
    std::size_t total = 0;
    Clopen all = Clopen::empty(t.sys, radius);
    for (const auto& c : t.cells) {
      const Clopen q = c.cell.lifted(radius);
      total += q.words().size();
      all = set_union(all, q);
    }
    rep.partition_of_space = all.is_full() && total == all.words().size();
  }

  const int d = t.sys->dim();
  const std::int64_t box_span = box.max_sup_norm() + 1;
  const std::int64_t pad = t.continuity_radius + 2;
  const std::int64_t win_len = 2 * (box_span + pad) + 4;

  for (std::int64_t s = 0; s < samples; ++s) {
    OrbitWindow w = OrbitWindow::generate(t.sys, win_len, s == 0 ? seed : seed + 77 * s);
    const std::int64_t c0 = win_len / 2;

    // Reconstruct the tile instances covering the box around position c0.
    std::set<std::pair<std::vector<std::int64_t>, int>> instances;
    bool lookup_ok = true;
    for (const auto& g : box.elements()) {
      GroupElement pos = GroupElement::zero(d);
      for (int a = 0; a < d; ++a) pos.coords[a] = c0 + g.coords[a];
      const int ci = cell_of(t, w.atom(pos, t.continuity_radius), t.continuity_radius);
      if (ci < 0) { lookup_ok = false; break; }
      const auto& cell = t.cells[ci];
      std::vector<std::int64_t> anchor(d);
      for (int a = 0; a < d; ++a) anchor[a] = pos.coords[a] - cell.offset.coords[a];
      instances.insert({anchor, cell.tile});
    }
    if (!lookup_ok) {
      ++rep.exactness_failures;
      rep.notes.push_back("sample " + std::to_string(s) + ": atom outside every cell");
      continue;
    }
    // Mark every box site each instance claims; exactness = one mark each.
    std::map<std::vector<std::int64_t>, int> marks;
    for (const auto& g : box.elements()) {
      std::vector<std::int64_t> key(d);
      for (int a = 0; a < d; ++a) key[a] = c0 + g.coords[a];
      marks.emplace(std::move(key), 0);
    }
    for (const auto& [anchor, tile] : instances)
      for (const auto& rel : t.tiles[tile].elements()) {
        std::vector<std::int64_t> key(d);
        for (int a = 0; a < d; ++a) key[a] = anchor[a] + rel.coords[a];
        auto it = marks.find(key);
        if (it != marks.end()) ++it->second;
      }
    for (const auto& [key, count] : marks) {
      if (count != 1) {
        ++rep.exactness_failures;
        if (rep.notes.size() < 16)
          rep.notes.push_back("sample " + std::to_string(s) + ": a box site is covered " +
                              std::to_string(count) + " times");
      }
    }
    ++rep.samples_checked;
  }

  // Equivariance T(x*g) = T(x)*g^-1 along the first axis: the instance
  // pattern seen from position c0+1 is the pattern at c0 shifted by one.
  rep.equivariance_ok = true;
  {
    OrbitWindow w = OrbitWindow::generate(t.sys, win_len, seed + 13);
    const std::int64_t c0 = win_len / 2;
    for (std::int64_t i = -8; i <= 8; ++i) {
      GroupElement p0 = GroupElement::zero(d), p1 = GroupElement::zero(d);
      p0.coords[0] = c0 + i;
      p1.coords[0] = c0 + i + 1;
      const int a0 = cell_of(t, w.atom(p0, t.continuity_radius), t.continuity_radius);
      const int a1 = cell_of(t, w.atom(p1, t.continuity_radius), t.continuity_radius);
      if (a0 < 0 || a1 < 0) { rep.equivariance_ok = false; break; }
      const auto& ca = t.cells[a0];
      const auto& cb = t.cells[a1];
      const std::int64_t anchor_a = p0.coords[0] - ca.offset.coords[0];
      const std::int64_t anchor_b = p1.coords[0] - cb.offset.coords[0];
      // same instance while inside it, new instance exactly at its end
      const bool same_instance = anchor_a == anchor_b && ca.tile == cb.tile;
      GroupElement rel = GroupElement::zero(d);
      rel.coords[0] = p1.coords[0] - anchor_a;
      const bool next_instance = !t.tiles[ca.tile].contains(rel);
      if (!(same_instance || next_instance)) {
        rep.equivariance_ok = false;
        rep.notes.push_back("equivariance break at relative index " + std::to_string(i));
        break;
      }
    }
  }
  return rep;
}

}  // namespace cantor
