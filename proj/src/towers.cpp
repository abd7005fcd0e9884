#include "cantor/towers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cantor {

namespace {

// Base-shrinking schedule for one Z-factor: cylinders of growing length.
Clopen factor_base(const SystemPtr& sys, int step) {
  switch (sys->kind()) {
    case SystemKind::Odometer: {
      std::string zeros(static_cast<std::size_t>(step + 1), '0');
      return Clopen::cylinder(sys, zeros, step);
    }
    case SystemKind::Substitution: {
      const auto& words = sys->admissible(step);
      return Clopen::from_words(sys, step, {words.front()});
    }
    case SystemKind::Cycle:
      return Clopen::from_words(sys, 0, {sys->admissible(0).front()});
    default:
      throw std::logic_error("factor_base on product");
  }
}

TowerDecomposition z_urp_towers(const SystemPtr& sys, const FiniteGroupSet& k, double eps) {
  for (int step = 0; step < 64; ++step) {
    const Clopen y = factor_base(sys, step);
    TowerDecomposition td = kakutani_rokhlin(sys, y);
    if (worst_shape_defect(td, k) < eps) return td;
    if (sys->kind() == SystemKind::Cycle)
      throw std::invalid_argument(
          "urp_towers: cycle of period " + std::to_string(sys->cycle_period()) +
          " cannot reach defect < " + std::to_string(eps) + " (degenerate oracle system)");
  }
  throw std::runtime_error("urp_towers: base shrinking did not reach the requested invariance");
}

}  // namespace

double worst_shape_defect(const TowerDecomposition& td, const FiniteGroupSet& k) {
  double worst = 0.0;
  for (const auto& t : td.towers) worst = std::max(worst, invariance_defect(t.shape, k));
  return worst;
}

TowerDecomposition urp_towers(const SystemPtr& sys, const FiniteGroupSet& k, double eps) {
  if (eps <= 0) throw std::invalid_argument("urp_towers: eps > 0 required");
  if (k.rank() != sys->dim() && !k.empty())
    throw std::invalid_argument("urp_towers: K rank mismatch");
  if (sys->dim() == 1) return z_urp_towers(sys, k, eps);

  // Product: per-factor interval towers combined into boxes, refining all
  // factors together until the exact defect of every box shape passes.
  const int d = sys->dim();
  for (int step = 0; step < 64; ++step) {
    std::vector<TowerDecomposition> parts;
    for (int a = 0; a < d; ++a) {
      const SystemPtr& f = sys->factor_ptr(a);
      parts.push_back(kakutani_rokhlin(f, factor_base(f, step)));
    }
    // All combinations of factor towers.
    TowerDecomposition td;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      std::vector<Word> words{Word()};
      std::vector<GroupElement> shape{GroupElement::zero(d)};
      // base words: cartesian product of factor base words at per-factor radii
      int rad = 0;
      for (int a = 0; a < d; ++a) rad = std::max(rad, parts[a].towers[idx[a]].base.radius());
      for (int a = 0; a < d; ++a) {
        const Clopen lifted = parts[a].towers[idx[a]].base.lifted(rad);
        std::vector<Word> next;
        for (const auto& w : words)
          for (const auto& p : lifted.words()) next.push_back(w + p);
        words = std::move(next);
        std::vector<GroupElement> nshape;
        for (const auto& g : shape)
          for (const auto& h : parts[a].towers[idx[a]].shape.elements()) {
            GroupElement e = g;
            e.coords[a] = h.coords[0];
            nshape.push_back(e);
          }
        shape = std::move(nshape);
      }
      td.towers.push_back({Clopen::from_words(sys, rad, std::move(words)),
                           FiniteGroupSet(std::move(shape))});
      int a = d - 1;
      while (a >= 0 && ++idx[a] == parts[a].towers.size()) idx[a--] = 0;
      if (a < 0) break;
    }
    int crad = 0;
    for (const auto& t : td.towers) crad = std::max(crad, t.base.radius());
    td.complement = Clopen::empty(sys, crad);
    if (worst_shape_defect(td, k) < eps) return td;
  }
  throw std::runtime_error("urp_towers: product refinement did not reach the requested invariance");
}

LevelTowerResult build_tower_from_level_function(const OrbitWindow& window,
                                                 const std::vector<double>& n_values,
                                                 std::int64_t n,
                                                 std::optional<double> input_defect) {
  const std::int64_t len = window.length();
  if (static_cast<std::int64_t>(n_values.size()) != len)
    throw std::invalid_argument("level function must cover the window");
  if (n < 1) throw std::invalid_argument("tower height must be >= 1");
  if (len < 4 * n) throw std::invalid_argument("window too short for the requested height");

  LevelTowerResult res;
  res.height = n;

  auto integral = [](double v) { return v >= 0 && std::fabs(v - std::llround(v)) < 1e-9; };
  auto level = [&](std::int64_t i) -> std::int64_t { return std::llround(n_values[i]); };

  // F0 = {x : n(sx) != n(x) + 1}; non-integer sites are counted separately
  // and excluded from every level class.
  std::vector<char> f0(len, 0), nonint(len, 0);
  std::int64_t f0_count = 0, nonint_count = 0;
  for (std::int64_t i = 0; i < len; ++i)
    if (!integral(n_values[i])) {
      nonint[i] = 1;
      ++nonint_count;
    }
  for (std::int64_t i = 0; i + 1 < len; ++i) {
    const bool bad = nonint[i] || nonint[i + 1] || level(i + 1) != level(i) + 1;
    if (bad) {
      f0[i] = 1;
      ++f0_count;
    }
  }
  res.f0_fraction = static_cast<double>(f0_count) / static_cast<double>(len - 1);
  res.non_integer_fraction = static_cast<double>(nonint_count) / static_cast<double>(len);

  // F = union of the 2N-1 translates of F0.
  std::vector<char> f(len, 0);
  for (std::int64_t i = 0; i < len; ++i) {
    if (!f0[i]) continue;
    for (std::int64_t s = -n + 1; s <= n - 1; ++s) {
      const std::int64_t j = i + s;
      if (j >= 0 && j < len) f[j] = 1;
    }
  }

  // B = intersection of s^-j(E_j \ F), j = 0..N-1, with E_j the classes
  // n = j mod N over integral nonnegative levels.
  for (std::int64_t i = 0; i + n <= len; ++i) {
    bool in_b = true;
    for (std::int64_t j = 0; j < n && in_b; ++j) {
      const std::int64_t p = i + j;
      if (nonint[p] || f[p] || level(p) < 0 || level(p) % n != j) in_b = false;
    }
    if (in_b) res.base_indices.push_back(i);
  }

  std::vector<char> covered(len, 0);
  for (std::int64_t b : res.base_indices)
    for (std::int64_t j = 0; j < n; ++j) covered[b + j] = 1;

  res.edge_band = 2 * n;
  const std::int64_t lo = res.edge_band, hi = len - res.edge_band;
  std::int64_t covered_count = 0;
  for (std::int64_t i = lo; i < hi; ++i) covered_count += covered[i];
  res.interior_sites = hi - lo;
  res.covered_sites = covered_count;
  res.complement_fraction =
      1.0 - static_cast<double>(covered_count) / static_cast<double>(res.interior_sites);

  if (input_defect) {
    const double delta = *input_defect;
    res.bound = delta + static_cast<double>(n) * (2.0 * n + 1.0) * delta;
    res.bound_respected = res.complement_fraction <= *res.bound + 1e-12;
  }
  return res;
}

}  // namespace cantor
