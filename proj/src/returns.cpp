#include "cantor/returns.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

namespace {

// Termination certificate for the first-return search.
std::int64_t return_horizon(const System& sys, const Clopen& y) {
  switch (sys.kind()) {
    case SystemKind::Cycle:
      return sys.cycle_period();
    case SystemKind::Odometer: {
      // Y is a union of residues modulo the radius modulus; the orbit of any
      // point visits every residue once per modulus cycle.
      std::int64_t m = 1;
      for (int i = 0; i <= y.radius(); ++i)
        m *= sys.odometer_bases()[i % sys.odometer_bases().size()];
      return m;
    }
    case SystemKind::Substitution: {
      // Linear recurrence: the max gap between occurrences of any admissible
      // base-length word in a stabilized substitution power bounds returns.
      const std::size_t len = static_cast<std::size_t>(sys.word_length(y.radius()));
      const int k = sys.stabilized_power(len) + 1;
      const std::string u = sys.substitution_power(k);
      std::int64_t max_gap = 1;
      for (const auto& w : sys.admissible(y.radius())) {
        std::int64_t prev = -1;
        std::int64_t gap = 0;
        for (std::size_t i = 0; i + len <= u.size(); ++i) {
          if (u.compare(i, len, w) == 0) {
            if (prev >= 0) gap = std::max<std::int64_t>(gap, static_cast<std::int64_t>(i) - prev);
            prev = static_cast<std::int64_t>(i);
          }
        }
        if (prev < 0) gap = static_cast<std::int64_t>(u.size());
        max_gap = std::max(max_gap, gap);
      }
      return 2 * max_gap + static_cast<std::int64_t>(len) + 16;
    }
    default:
      throw std::invalid_argument("first-return analysis requires a Z-system");
  }
}

}  // namespace

ReturnData first_return_analysis(const SystemPtr& sys, const Clopen& y) {
  if (sys->dim() != 1) throw std::invalid_argument("first-return analysis requires a Z-system");
  if (!same_system(*sys, *y.system())) throw std::invalid_argument("base over different system");
  if (y.is_empty()) throw std::invalid_argument("first-return analysis: empty base");
  if (!sys->minimal()) throw std::invalid_argument("first-return analysis: system not minimal");

  const std::int64_t horizon = return_horizon(*sys, y);
  ReturnData rd;
  rd.base = y;
  Clopen remaining = y;
  for (std::int64_t j = 1; j <= horizon && !remaining.is_empty(); ++j) {
    const Clopen hit = set_intersect(remaining, y.translated(GroupElement::z(-j)));
    if (!hit.is_empty()) {
      rd.returns.push_back({j, hit});
      remaining = set_difference(remaining, hit);
    }
  }
  if (!remaining.is_empty())
    throw std::runtime_error("first-return horizon exhausted before covering Y (internal)");
  return rd;
}

std::int64_t TowerDecomposition::min_height() const {
  std::int64_t m = INT64_MAX;
  for (const auto& t : towers) m = std::min<std::int64_t>(m, t.shape.size());
  return m;
}

std::int64_t TowerDecomposition::max_height() const {
  std::int64_t m = 0;
  for (const auto& t : towers) m = std::max<std::int64_t>(m, t.shape.size());
  return m;
}

TowerDecomposition kakutani_rokhlin(const SystemPtr& sys, const Clopen& y) {
  const ReturnData rd = first_return_analysis(sys, y);
  TowerDecomposition td;
  int radius = y.radius();
  for (const auto& r : rd.returns) {
    td.towers.push_back({r.cell, FiniteGroupSet::interval(0, r.time - 1)});
    radius = std::max(radius, r.cell.radius());
  }
  td.complement = Clopen::empty(sys, radius);
  return td;
}

PartitionCheck verify_tower_partition(const TowerDecomposition& td) {
  PartitionCheck check;
  if (td.towers.empty()) return check;
  const SystemPtr sys = td.towers[0].base.system();

  std::vector<Clopen> pieces;
  for (const auto& t : td.towers)
    for (const auto& g : t.shape.elements()) pieces.push_back(t.base.translated(g));
  if (!td.complement.is_empty()) pieces.push_back(td.complement);

  int radius = 0;
  for (const auto& p : pieces) radius = std::max(radius, p.radius());

  std::size_t total = 0;
  Clopen all = Clopen::empty(sys, radius);
  for (const auto& p : pieces) {
    const Clopen q = p.lifted(radius);
    total += q.words().size();
    all = set_union(all, q);
  }
  check.covers = all.is_full();
  check.pairwise_disjoint = total == all.words().size();

  // Clopen specialization of the boundary decomposition: every cell is both
  // open and closed, so closure(Z_k) meets no earlier cell and the W-sets
  // all vanish.
  check.boundary_cells_empty = true;
  for (std::size_t k = 0; k < td.towers.size() && check.boundary_cells_empty; ++k)
    for (std::size_t j = 0; j < k; ++j)
      if (!td.towers[k].base.disjoint_from(td.towers[j].base)) {
        check.boundary_cells_empty = false;
        break;
      }
  return check;
}

double kac_sum(const TowerDecomposition& td, const InvariantMeasure& mu) {
  double total = 0.0;
  for (const auto& t : td.towers)
    total += static_cast<double>(t.shape.size()) * mu(t.base);
  return total;
}

}  // namespace cantor
