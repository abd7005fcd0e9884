#include "cantor/compare.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cantor {

WitnessValidation validate_witness(const SubequivalenceWitness& w, const Clopen& a,
                                   const Clopen& b) {
  WitnessValidation v;
  const SystemPtr sys = a.system();
  int radius = a.radius();
  for (const auto& [piece, g] : w.pieces) radius = std::max(radius, piece.radius());

  std::size_t total = 0;
  Clopen un = Clopen::empty(sys, radius);
  for (const auto& [piece, g] : w.pieces) {
    const Clopen q = piece.lifted(radius);
    total += q.words().size();
    un = set_union(un, q);
  }
  v.partitions_a = (un == a) && total == un.words().size();

  std::vector<Clopen> images;
  for (const auto& [piece, g] : w.pieces) images.push_back(piece.translated(g));
  v.images_in_b = true;
  for (const auto& img : images) v.images_in_b = v.images_in_b && img.subset_of(b);
  v.images_disjoint = true;
  for (std::size_t i = 0; i < images.size() && v.images_disjoint; ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!images[i].disjoint_from(images[j])) {
        v.images_disjoint = false;
        break;
      }
  return v;
}

CompareResult dynamical_compare(const SystemPtr& sys, const Clopen& a, const Clopen& b,
                                const FiniteGroupSet& translations) {
  if (translations.empty()) throw std::invalid_argument("dynamical_compare: empty translation set");
  if (!same_system(*sys, *a.system()) || !same_system(*sys, *b.system()))
    throw std::invalid_argument("dynamical_compare: operands over different systems");

  CompareResult res;
  if (a.is_empty()) {
    res.witness = SubequivalenceWitness{};
    return res;
  }

  // Quick exit: A subset of B maps by the identity.
  const GroupElement zero = GroupElement::zero(sys->dim());
  if (translations.contains(zero) && a.subset_of(b)) {
    SubequivalenceWitness w;
    w.pieces.push_back({a, zero});
    res.witness = std::move(w);
    res.atoms_matched = 1;
    res.refine_radius = a.radius();
    return res;
  }

  // Atom matching. Left atoms at r_all refine A; the translate of a left
  // atom by g determines a unique target atom at r_b when the radius gap
  // absorbs the shift, and distinct target atoms are disjoint.
  const int r_b = std::max(a.radius(), b.radius());
  int r_all = r_b;
  for (const auto& g : translations.elements())
    r_all = std::max(r_all, sys->needed_radius(r_b, g));
  res.refine_radius = r_all;

  const Clopen a_lift = a.lifted(r_all);
  const Clopen b_lift = b.lifted(r_b);

  // candidate targets per left atom, ordered by (|g|, g)
  std::vector<GroupElement> ordered = translations.elements();
  std::sort(ordered.begin(), ordered.end(), [](const GroupElement& x, const GroupElement& y) {
    if (x.sup_norm() != y.sup_norm()) return x.sup_norm() < y.sup_norm();
    return x < y;
  });

  const auto& left_atoms = a_lift.words();
  std::map<Word, int> target_index;
  std::vector<Word> targets;
  std::vector<std::vector<std::pair<int, const GroupElement*>>> adj(left_atoms.size());
  for (std::size_t i = 0; i < left_atoms.size(); ++i) {
    for (const auto& g : ordered) {
      const Word img = sys->trace_word(left_atoms[i], r_all, g, r_b);
      if (!b_lift.contains_word(img)) continue;
      auto [it, inserted] = target_index.emplace(img, static_cast<int>(targets.size()));
      if (inserted) targets.push_back(img);
      adj[i].push_back({it->second, &g});
    }
  }

  // Deterministic Kuhn augmenting paths over the ordered adjacency.
  std::vector<int> match_left(left_atoms.size(), -1), match_right(targets.size(), -1);
  std::vector<const GroupElement*> used(left_atoms.size(), nullptr);
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int u) -> bool {
    for (const auto& [t, g] : adj[u]) {
      if (seen[t]) continue;
      seen[t] = 1;
      if (match_right[t] < 0 || augment(match_right[t])) {
        match_right[t] = u;
        match_left[u] = t;
        used[u] = g;
        return true;
      }
    }
    return false;
  };
  bool all = true;
  for (std::size_t i = 0; i < left_atoms.size(); ++i) {
    seen.assign(targets.size(), 0);
    if (!augment(static_cast<int>(i))) {
      all = false;
      break;
    }
  }
  if (!all) {
    res.not_found_reason = "window-limited: no witness at refine radius " +
                           std::to_string(r_all) + " with the given translation window (larger " +
                           "windows or radii may still succeed)";
    return res;
  }
  SubequivalenceWitness w;
  for (std::size_t i = 0; i < left_atoms.size(); ++i)
    w.pieces.push_back({Clopen::from_words(sys, r_all, {left_atoms[i]}), *used[i]});
  res.atoms_matched = static_cast<std::int64_t>(left_atoms.size());
  res.witness = std::move(w);
  return res;
}

MeasureGapResult measure_gap_check(const InvariantMeasure& mu, const Clopen& e, const Clopen& f,
                                   double lambda) {
  MeasureGapResult r;
  r.lhs = mu(e);
  r.rhs = lambda * mu(f);
  if (mu.mode() == MeasureMode::Empirical)
    r.error_band = 2.0 / static_cast<double>(mu.window_length());
  r.holds = r.lhs < r.rhs;
  return r;
}

QuarterCriterionReport quarter_criterion(const SmallGroupoid& g, const Clopen& e, const Clopen& f,
                                         double lambda) {
  QuarterCriterionReport rep;
  const SystemPtr& sys = g.system();
  int rbig = g.data_radius();
  for (const auto& c : g.shape().cells)
    for (const auto& off : c.shape.elements()) {
      rbig = std::max(rbig, sys->needed_radius(std::max(e.radius(), f.radius()), off));
      rbig = std::max(rbig, sys->needed_radius(g.data_radius(), off));
    }

  std::vector<std::int64_t> orbit_sizes, hits_f;
  rep.first_inequality = true;
  rep.min_slack_first = 1e300;
  for (const auto& w : sys->admissible(rbig)) {
    ++rep.atoms_checked;
    const FiniteGroupSet s = g.shape_at(w, rbig);
    std::int64_t in_e = 0, in_f = 0;
    for (const auto& off : s.elements()) {
      const Word we = sys->trace_word(w, rbig, off, e.radius());
      const Word wf = sys->trace_word(w, rbig, off, f.radius());
      if (e.contains_word(we)) ++in_e;
      if (f.contains_word(wf)) ++in_f;
    }
    const double slack = lambda * static_cast<double>(in_f) - static_cast<double>(in_e);
    rep.min_slack_first = std::min(rep.min_slack_first, slack);
    if (slack <= 0) rep.first_inequality = false;
    orbit_sizes.push_back(static_cast<std::int64_t>(s.size()));
    hits_f.push_back(in_f);
  }
  // 1/|Orb(x0)| < lambda |Orb(x) cap F| / |Orb(x)| over all pairs: compare
  // the largest 1/|Orb(x0)| (smallest orbit) against the smallest rhs.
  std::int64_t min_orbit = orbit_sizes.empty() ? 1 : *std::min_element(orbit_sizes.begin(), orbit_sizes.end());
  double min_rhs = 1e300;
  for (std::size_t i = 0; i < orbit_sizes.size(); ++i)
    min_rhs = std::min(min_rhs, lambda * static_cast<double>(hits_f[i]) /
                                    static_cast<double>(orbit_sizes[i]));
  rep.min_slack_second = min_rhs - 1.0 / static_cast<double>(min_orbit);
  rep.second_inequality = rep.min_slack_second > 0;
  return rep;
}

}  // namespace cantor
