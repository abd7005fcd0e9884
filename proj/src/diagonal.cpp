#include "cantor/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cantor {

TowerDiagonalModel make_tower_diagonal_model(const TowerDecomposition& towers, int copies,
                                             int radius_hint) {
  if (towers.towers.empty()) throw std::invalid_argument("tower model: no towers");
  if (copies < 1) throw std::invalid_argument("tower model: copies >= 1");
  TowerDiagonalModel m;
  m.towers = towers;
  m.copies = copies;
  const SystemPtr sys = towers.towers[0].base.system();
  int radius = radius_hint;
  for (const auto& t : towers.towers) {
    radius = std::max(radius, t.base.radius());
    for (const auto& g : t.shape.elements())
      radius = std::max(radius, sys->needed_radius(radius_hint, g));
  }
  m.eval_radius = radius;
  for (const auto& t : towers.towers) {
    TowerDiagonalModel::Block b;
    b.base_atoms = t.base.lifted(radius).words();
    b.levels = t.shape.elements();
    m.blocks.push_back(std::move(b));
  }
  return m;
}

DiagonalElement diagonal_of_function(const TowerDiagonalModel& m, const LcReal& f) {
  DiagonalElement d;
  for (const auto& b : m.blocks) {
    std::vector<LcReal> entries;
    for (int c = 0; c < m.copies; ++c)
      for (const auto& g : b.levels) entries.push_back(f.composed(g));
    d.blocks.push_back(std::move(entries));
  }
  return d;
}

DiagonalElement diagonal_ones(const TowerDiagonalModel& m) {
  const SystemPtr sys = m.towers.towers[0].base.system();
  return diagonal_of_function(m, LcReal::constant(sys, 1.0));
}

DiagonalElement cut_down(const DiagonalElement& a, double eps) {
  if (eps < 0) throw std::invalid_argument("cut_down: eps >= 0 required");
  DiagonalElement out = a;
  for (auto& block : out.blocks)
    for (auto& f : block) f = f.cut_down(eps);
  return out;
}

namespace {

std::vector<double> entries_at(const TowerDiagonalModel& m, const DiagonalElement& a, int block,
                               std::size_t atom) {
  const auto& b = m.blocks.at(block);
  const Word& w = b.base_atoms.at(atom);
  std::vector<double> out;
  for (const auto& f : a.blocks.at(block)) out.push_back(f.value_at(w, m.eval_radius));
  return out;
}

}  // namespace

int diagonal_rank_at(const TowerDiagonalModel& m, const DiagonalElement& a, int block,
                     std::size_t atom) {
  int rank = 0;
  for (double v : entries_at(m, a, block, atom))
    if (v > 0.0) ++rank;
  return rank;
}

RankCompareReport rank_compare_diagonal(const TowerDiagonalModel& m, const DiagonalElement& a,
                                        const DiagonalElement& b, double lambda) {
  RankCompareReport rep;
  rep.lambda = lambda;
  rep.leq_pass = true;
  rep.quarter_pass = true;
  for (std::size_t s = 0; s < m.blocks.size(); ++s)
    for (std::size_t at = 0; at < m.blocks[s].base_atoms.size(); ++at) {
      RankCompareReport::Row row;
      row.block = static_cast<int>(s);
      row.atom = at;
      row.rank_a = diagonal_rank_at(m, a, row.block, at);
      row.rank_b = diagonal_rank_at(m, b, row.block, at);
      rep.leq_pass = rep.leq_pass && row.rank_a <= row.rank_b;
      rep.quarter_pass =
          rep.quarter_pass && static_cast<double>(row.rank_a) < lambda * row.rank_b;
      rep.rows.push_back(row);
    }
  return rep;
}

CuntzWitness cuntz_witness_diagonal(const TowerDiagonalModel& m, const DiagonalElement& a,
                                    const DiagonalElement& b, double eps) {
  if (eps < 0) throw std::invalid_argument("cuntz witness: eps >= 0 required");
  CuntzWitness w;
  w.eps = eps;
  for (std::size_t s = 0; s < m.blocks.size(); ++s)
    for (std::size_t at = 0; at < m.blocks[s].base_atoms.size(); ++at) {
      const std::vector<double> av = entries_at(m, a, static_cast<int>(s), at);
      const std::vector<double> bv = entries_at(m, b, static_cast<int>(s), at);
      const int n = static_cast<int>(av.size());

      std::vector<int> ai, bi;
      for (int i = 0; i < n; ++i) {
        if (av[i] - eps > 0.0) ai.push_back(i);
        if (bv[i] > 0.0) bi.push_back(i);
      }
      if (ai.size() > bi.size())
        throw std::invalid_argument("cuntz witness: rank precondition fails at block " +
                                    std::to_string(s) + ", atom " + std::to_string(at));
      std::sort(ai.begin(), ai.end(), [&](int x, int y) { return av[x] > av[y]; });
      std::sort(bi.begin(), bi.end(), [&](int x, int y) { return bv[x] > bv[y]; });

      CuntzWitness::Cell cell;
      cell.block = static_cast<int>(s);
      cell.atom = at;
      cell.s = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t k = 0; k < ai.size(); ++k) {
        const double target = av[ai[k]] - eps;  // (a - eps)_+ on the support
        cell.s(bi[k], ai[k]) = std::sqrt(target / bv[bi[k]]);
      }
      Eigen::MatrixXd lhs = cell.s.transpose() *
                            Eigen::VectorXd::Map(bv.data(), n).asDiagonal() * cell.s;
      Eigen::VectorXd cut(n);
      for (int i = 0; i < n; ++i) cut(i) = std::max(av[i] - eps, 0.0);
      const Eigen::MatrixXd diff = lhs - Eigen::MatrixXd(cut.asDiagonal());
      cell.error = diff.operatorNorm();
      const double snorm = cell.s.operatorNorm();
      if (snorm > 1.0 + 1e-12)
        throw std::invalid_argument(
            "cuntz witness: no contraction at this eps (entry magnitudes exceed the target) at "
            "block " + std::to_string(s) + ", atom " + std::to_string(at));
      w.max_error = std::max(w.max_error, cell.error);
      w.max_norm = std::max(w.max_norm, snorm);
      w.cells.push_back(std::move(cell));
    }
  return w;
}

DivisibleElementResult build_divisible_element(const SystemPtr& sys,
                                               const TowerDecomposition& towers,
                                               const InvariantMeasure& mu, double r, double eps) {
  if (r <= 0) throw std::invalid_argument("divisible element: r > 0 required");
  if (eps <= 0) throw std::invalid_argument("divisible element: eps > 0 required");
  const double frac = r - std::floor(r);
  const int d = static_cast<int>(std::floor(r));

  DivisibleElementResult res;
  res.target = r;
  res.integer_part = d;
  const int copies = frac > 0.0 ? d + 1 : std::max(d, 1);
  res.model = make_tower_diagonal_model(towers, copies);

  // Select ceil({r} |shape_s|) levels per tower, lowest levels first.
  Clopen f = Clopen::empty(sys, towers.towers[0].base.radius());
  for (std::size_t s = 0; s < towers.towers.size(); ++s) {
    const auto& t = towers.towers[s];
    const std::int64_t h = static_cast<std::int64_t>(t.shape.size());
    const std::int64_t pick =
        frac == 0.0 ? 0 : static_cast<std::int64_t>(std::ceil(frac * static_cast<double>(h)));
    res.selected_levels.push_back(pick);
    for (std::int64_t i = 0; i < pick; ++i)
      f = set_union(f, t.base.translated(t.shape.elements()[i]));
  }
  res.f = f;

  // h = diag{h0, 1 x d}: copy 0 holds the selected-level indicators, the
  // remaining copies are constant one.
  DiagonalElement h;
  for (std::size_t s = 0; s < res.model.blocks.size(); ++s) {
    const auto& b = res.model.blocks[s];
    std::vector<LcReal> entries;
    for (int c = 0; c < res.model.copies; ++c) {
      for (std::size_t li = 0; li < b.levels.size(); ++li) {
        if (c == 0 && frac > 0.0) {
          const bool on = static_cast<std::int64_t>(li) < res.selected_levels[s];
          entries.push_back(LcReal::constant(sys, on ? 1.0 : 0.0));
        } else {
          entries.push_back(LcReal::constant(sys, 1.0));
        }
      }
    }
    h.blocks.push_back(std::move(entries));
  }
  res.h = h;

  // Route 1: level counts times base measures (the entries are indicators,
  // so h^{1/n} = h and this is already the limiting trace).
  double route1 = 0.0;
  for (std::size_t s = 0; s < towers.towers.size(); ++s)
    route1 += static_cast<double>(res.selected_levels[s]) * mu(towers.towers[s].base);
  double full_mass = 0.0;
  for (const auto& t : towers.towers)
    full_mass += static_cast<double>(t.shape.size()) * mu(t.base);
  res.d_mu_level_count = route1 + d * full_mass;

  // Route 2: measure of the clopen union, assembled by set algebra.
  res.d_mu_clopen = mu(res.f) + d * full_mass;

  if (std::fabs(res.d_mu_level_count - r) >= eps) {
    const std::int64_t needed = static_cast<std::int64_t>(std::ceil(1.0 / eps)) + 1;
    throw std::invalid_argument(
        "divisible element: towers too short for the requested accuracy; need heights >= " +
        std::to_string(needed));
  }
  return res;
}

}  // namespace cantor
