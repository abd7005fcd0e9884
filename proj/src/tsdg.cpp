#include "cantor/tsdg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cantor {

namespace {

FiniteGroupSet power_set(const FiniteGroupSet& n, std::int64_t k, int dim) {
  FiniteGroupSet out = FiniteGroupSet::singleton(GroupElement::zero(dim));
  for (std::int64_t i = 0; i < k; ++i) out = set_product(out, n);
  return out;
}

LcReal snap_to_cells(const LcReal& f, const std::vector<Clopen>& cells, int radius) {
  const SystemPtr sys = f.system();
  const auto& atoms = sys->admissible(radius);
  const LcReal lifted = f.lifted(radius);
  std::vector<double> values(atoms.size(), 0.0);
  std::vector<char> assigned(atoms.size(), 0);
  for (const auto& cell : cells) {
    const Clopen c = cell.lifted(radius);
    if (c.is_empty()) continue;
    // snapping point: the lexicographically least atom of the cell
    const double v = lifted.values()[sys->atom_index(c.words().front(), radius)];
    for (const auto& w : c.words()) {
      const std::size_t i = sys->atom_index(w, radius);
      values[i] = v;
      assigned[i] = 1;
    }
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (!assigned[i]) values[i] = lifted.values()[i];
  return LcReal::from_values(sys, radius, std::move(values));
}

}  // namespace

TsdgConstruction tsdg_construct(const SystemPtr& sys, const TowerDecomposition& towers,
                                const std::vector<CrossedElement>& f_list, const LcReal& h,
                                const Clopen& constraint_set, double delta,
                                std::int64_t ramp_length, const FiniteGroupSet& support) {
  if (delta <= 0) throw std::invalid_argument("tsdg: delta > 0 required");
  if (ramp_length < 1) throw std::invalid_argument("tsdg: L >= 1 required");
  const int d = sys->dim();
  if (!support.contains(GroupElement::zero(d)))
    throw std::invalid_argument("tsdg: support must contain the identity");
  if (!(support.negated() == support))
    throw std::invalid_argument("tsdg: support must be symmetric");
  for (const auto& f : f_list)
    for (const auto& [g, coeff] : f.coefficients())
      if (!support.contains(g))
        throw std::invalid_argument("tsdg: element support escapes N at " + g.str());

  TsdgConstruction c;
  c.sys = sys;
  c.towers = towers;
  c.support = support;
  c.ramp_length = ramp_length;
  c.delta = delta;
  c.f_original = f_list;
  c.h_original = h;
  c.constraint_set = constraint_set;

  double m = 1.0;
  for (const auto& f : f_list) m = std::max(m, f.max_coefficient_norm());
  c.coeff_bound = m;
  c.large_l_ok =
      static_cast<double>(ramp_length) > 8.0 * m * static_cast<double>(support.size()) / delta;

  // Nested interiors against powers of N give the level function.
  const FiniteGroupSet top_power = power_set(support, ramp_length + 1, d);
  for (const auto& t : towers.towers) {
    std::vector<FiniteGroupSet> interiors;  // int_{N^l}, l = 1..L+1
    for (std::int64_t l = 1; l <= ramp_length + 1; ++l)
      interiors.push_back(interior(t.shape, power_set(support, l, d)));
    std::vector<int> levels;
    for (const auto& g : t.shape.elements()) {
      int level = 0;
      for (std::int64_t l = 1; l <= ramp_length + 1; ++l)
        if (interiors[l - 1].contains(g)) level = static_cast<int>(l);
      levels.push_back(level);
    }
    std::vector<std::int64_t> counts(ramp_length + 2, 0);
    for (int lv : levels) ++counts[lv];
    const double interior_fraction =
        1.0 - static_cast<double>(counts[ramp_length + 1]) / static_cast<double>(t.shape.size());
    c.worst_interior_fraction = std::max(c.worst_interior_fraction, interior_fraction);
    c.level_of.push_back(std::move(levels));
    c.level_counts.push_back(std::move(counts));
  }
  if (c.worst_interior_fraction >= delta / 2) {
    // required: |shape| large enough that the N^{L+1}-interior misses < delta/2
    throw std::invalid_argument(
        "tsdg: tower shapes not (N^{L+1}, delta/2)-invariant; worst interior deficit " +
        std::to_string(c.worst_interior_fraction) + " >= " + std::to_string(delta / 2) +
        " (grow the towers; |N^{L+1}| = " + std::to_string(top_power.size()) + ")");
  }

  // The ramp p and the snapping cell partition.
  int radius = 0;
  std::vector<Clopen> cells;
  for (std::size_t s = 0; s < towers.towers.size(); ++s) {
    const auto& t = towers.towers[s];
    for (const auto& g : t.shape.elements()) {
      cells.push_back(t.base.translated(g));
      radius = std::max(radius, cells.back().radius());
    }
  }
  for (const auto& f : f_list)
    for (const auto& [g, coeff] : f.coefficients()) radius = std::max(radius, coeff.radius());
  radius = std::max(radius, h.radius());
  radius = std::max(radius, towers.complement.radius());
  c.snap_radius = radius;

  LcReal p = LcReal::constant(sys, 0.0, radius);
  for (std::size_t s = 0; s < towers.towers.size(); ++s) {
    const auto& t = towers.towers[s];
    const auto& elems = t.shape.elements();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const int lv = c.level_of[s][i];
      if (lv < 1) continue;
      const double weight = static_cast<double>(lv - 1) / static_cast<double>(ramp_length);
      if (weight == 0.0) continue;
      p = p + weight * LcReal::indicator(t.base.translated(elems[i]));
    }
  }
  c.p = p;

  // Snapped elements: coefficients constant on every tower cell, pinned at
  // the lexicographically least atom of the cell.
  for (const auto& f : f_list) {
    CrossedElement snapped(sys);
    for (const auto& [g, coeff] : f.coefficients())
      snapped.set_coefficient(g, snap_to_cells(coeff, cells, radius));
    c.f_snapped.push_back(std::move(snapped));
  }
  c.h_snapped = snap_to_cells(h, cells, radius);
  return c;
}

bool in_tower_block_algebra(const TsdgConstruction& c, const CrossedElement& a, std::string* why) {
  const SystemPtr& sys = c.sys;
  for (const auto& [gamma, coeff] : a.coefficients()) {
    Clopen allowed = Clopen::empty(sys, c.snap_radius);
    for (const auto& t : c.towers.towers)
      for (const auto& g1 : t.shape.elements())
        if (t.shape.contains(g1 + gamma)) allowed = set_union(allowed, t.base.translated(g1));
    if (!coeff.support().subset_of(allowed)) {
      if (why)
        *why = "coefficient of u_" + gamma.str() +
               " leaves the tower columns (not in the block algebra)";
      return false;
    }
  }
  return true;
}

TsdgReport tsdg_verify(const TsdgConstruction& c, const InvariantMeasure& mu,
                       const OrbitWindow& w) {
  TsdgReport rep;
  const SystemPtr& sys = c.sys;
  const double delta = c.delta;
  const double nl = static_cast<double>(c.support.size()) * c.coeff_bound /
                    static_cast<double>(c.ramp_length);

  // (1) perturbation norms, exact coefficient arithmetic
  {
    double worst = (c.h_original - c.h_snapped).sup_norm();
    for (std::size_t i = 0; i < c.f_original.size(); ++i) {
      const CrossedElement diff = c.f_original[i] - c.f_snapped[i];
      worst = std::max(worst, diff.coefficient_norm_bound());
    }
    rep.rows.push_back({"(1) ||f - f'||, ||h - h'||", delta, worst, worst < delta, ""});
  }

  // (2) ramp commutator ||p f' - f' p||: the certified upper bound is the
  // coefficient mass (triangle inequality); the window norm is the lower
  // estimate and is reported alongside.
  {
    const CrossedElement pc = CrossedElement::function(c.p);
    double worst_window = 0.0, worst_bound = 0.0;
    for (const auto& f : c.f_snapped) {
      const CrossedElement comm = pc * f - f * pc;
      if (comm.is_zero()) continue;
      worst_bound = std::max(worst_bound, comm.coefficient_norm_bound());
      worst_window = std::max(worst_window, window_norm(comm, w).value);
    }
    rep.rows.push_back({"(2) ||p f' - f' p||", nl + 1e-6, worst_bound, worst_bound <= nl + 1e-6,
                        "window value " + std::to_string(worst_window)});
    rep.rows.push_back({"(2') commutator < delta", delta, worst_bound, worst_bound < delta, ""});
  }

  // (3) membership in the block algebra
  {
    std::string why;
    bool ok = true;
    const CrossedElement pc = CrossedElement::function(c.p);
    if (!in_tower_block_algebra(c, pc, &why)) ok = false;
    const CrossedElement php = pc * CrossedElement::function(c.h_snapped) * pc;
    if (ok && !in_tower_block_algebra(c, php, &why)) ok = false;
    for (const auto& f : c.f_snapped) {
      if (!ok) break;
      if (!in_tower_block_algebra(c, pc * f * pc, &why)) ok = false;
    }
    rep.rows.push_back({"(3) p, p h' p, p f' p in C", 1.0, ok ? 1.0 : 0.0, ok, why});
  }

  // (4) zero-dimensional base spaces
  rep.rows.push_back({"(4) dim[Z_s] = 0", delta, 0.0, true, "Cantor cells"});

  // (5) mu(X \ p^{-1}(1)): exact, against the level-count formula
  {
    double formula = 0.0;
    for (std::size_t s = 0; s < c.towers.towers.size(); ++s) {
      const auto& t = c.towers.towers[s];
      const std::int64_t top = c.level_counts[s][c.ramp_length + 1];
      formula += (static_cast<double>(t.shape.size()) - static_cast<double>(top)) * mu(t.base);
    }
    formula += mu(c.towers.complement);
    // independent route: the clopen where p = 1
    const auto& atoms = sys->admissible(c.p.radius());
    std::vector<Word> ones;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (c.p.values()[i] == 1.0) ones.push_back(atoms[i]);
    const double off_mass = 1.0 - mu(Clopen::from_words(sys, c.p.radius(), std::move(ones)));
    const bool agree = std::fabs(off_mass - formula) < 1e-12;
    rep.rows.push_back({"(5) mu(X \\ p^{-1}(1))", delta, off_mass, off_mass < delta && agree,
                        "level formula " + std::to_string(formula)});
  }

  // (6) rank((p h' p - 1/4)_+)(z) >= K_s (min mu(F) - delta) on every base atom
  {
    const double min_mu_f = mu(c.constraint_set);
    const LcReal php = c.p * c.p * c.h_snapped;
    bool pass = true;
    double worst_margin = 1e300;
    for (std::size_t s = 0; s < c.towers.towers.size(); ++s) {
      const auto& t = c.towers.towers[s];
      const double ks = static_cast<double>(t.shape.size());
      const double bound = ks * (min_mu_f - delta);
      int rz = t.base.radius();
      for (const auto& g : t.shape.elements())
        rz = std::max(rz, sys->needed_radius(php.radius(), g));
      const Clopen base_rz = t.base.lifted(rz);
      for (const auto& atom : base_rz.words()) {
        int rank = 0;
        for (const auto& g : t.shape.elements())
          if (php.value_at(sys->trace_word(atom, rz, g, php.radius()), php.radius()) > 0.25)
            ++rank;
        worst_margin = std::min(worst_margin, static_cast<double>(rank) - bound);
        if (static_cast<double>(rank) < bound) pass = false;
      }
    }
    std::string note = mu.system()->uniquely_ergodic()
                           ? ""
                           : "measure minimum evaluated over the product measure only";
    rep.rows.push_back({"(6) rank((p h' p - 1/4)_+) >= K_s(min mu(F) - delta)", 0.0, worst_margin,
                        pass, note});
  }

  // (7) rank(p(z)) > K_s(1 - delta) and the fraction of exact ones
  {
    bool pass = true;
    double worst_rank_margin = 1e300, worst_ones_margin = 1e300;
    for (std::size_t s = 0; s < c.towers.towers.size(); ++s) {
      const auto& t = c.towers.towers[s];
      const double ks = static_cast<double>(t.shape.size());
      int rz = t.base.radius();
      for (const auto& g : t.shape.elements())
        rz = std::max(rz, sys->needed_radius(c.p.radius(), g));
      const Clopen base_rz = t.base.lifted(rz);
      for (const auto& atom : base_rz.words()) {
        int rank = 0, ones = 0;
        for (const auto& g : t.shape.elements()) {
          const double v = c.p.value_at(sys->trace_word(atom, rz, g, c.p.radius()), c.p.radius());
          if (v > 0.0) ++rank;
          if (v == 1.0) ++ones;
        }
        worst_rank_margin = std::min(worst_rank_margin, rank - ks * (1.0 - delta));
        worst_ones_margin = std::min(worst_ones_margin, ones - ks * (1.0 - delta));
        if (rank <= ks * (1.0 - delta) || ones <= ks * (1.0 - delta)) pass = false;
      }
    }
    rep.rows.push_back({"(7) rank(p(z)) > K_s(1 - delta)", 0.0,
                        std::min(worst_rank_margin, worst_ones_margin), pass, ""});
  }

  // (8) diagonal one on the blocks: mu off the towers
  {
    int radius = c.towers.complement.radius();
    for (const auto& t : c.towers.towers)
      for (const auto& g : t.shape.elements())
        radius = std::max(radius, t.base.translated(g).radius());
    Clopen towers_union = Clopen::empty(sys, radius);
    for (const auto& t : c.towers.towers)
      for (const auto& g : t.shape.elements())
        towers_union = set_union(towers_union, t.base.translated(g).lifted(radius));
    const double off = 1.0 - mu(towers_union);
    rep.rows.push_back({"(8) mu(X \\ f^{-1}(1)) for diagonal ones", delta, off, off < delta, ""});
  }

  return rep;
}

}  // namespace cantor
