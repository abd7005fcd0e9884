#include "cantor/tower_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace cantor {

TowerAlgebraReport tower_algebra_check(const TowerDecomposition& towers,
                                       const std::vector<CrossedElement>& generators,
                                       const OrbitWindow& w, double tol) {
  TowerAlgebraReport rep;
  rep.tolerance = tol;
  if (towers.towers.empty()) throw std::invalid_argument("tower_algebra_check: no towers");
  const SystemPtr sys = towers.towers[0].base.system();

  int crad = 0;
  for (const auto& t : towers.towers) crad = std::max(crad, t.base.radius());
  Clopen bases = Clopen::empty(sys, crad);
  for (const auto& t : towers.towers) bases = set_union(bases, t.base.lifted(crad));

  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    for (const auto& [g, f] : generators[gi].coefficients()) {
      if (!f.support().subset_of(bases)) {
        rep.support_violations.push_back("generator " + std::to_string(gi) + " coefficient u_" +
                                         g.str() + " has mass outside the tower bases");
      }
    }
  }

  // Orthogonality within each tower, generators cut to the tower base:
  // (a u_i)(u_j* b) must vanish identically for i != j.
  for (std::size_t s = 0; s < towers.towers.size(); ++s) {
    const auto& t = towers.towers[s];
    const CrossedElement chi = CrossedElement::indicator(t.base);
    std::vector<CrossedElement> local;
    for (const auto& gen : generators) local.push_back(chi * gen * chi);
    for (const auto& a : local)
      for (const auto& b : local) {
        for (const auto& gi : t.shape.elements())
          for (const auto& gj : t.shape.elements()) {
            if (gi == gj) continue;
            ++rep.orthogonality_checks;
            const CrossedElement prod = (a * CrossedElement::unitary(sys, gi)) *
                                        (CrossedElement::unitary(sys, -gj) * b);
            if (!prod.is_zero()) {
              TowerAlgebraReport::Violation v;
              v.tower = static_cast<int>(s);
              v.level_i = gi.coords[0];
              v.level_j = gj.coords[0];
              v.witness = prod.str();
              rep.orthogonality_violations.push_back(std::move(v));
            }
          }
      }
  }

  // Matrix units v_g = p u_g with p the base indicator: ||v_i v_j* -
  // delta_ij p|| on the window interior.
  std::int64_t band = 0;
  for (const auto& t : towers.towers) band = std::max(band, t.shape.max_sup_norm());
  const std::int64_t margin = band + sys->needed_radius(crad, GroupElement::z(band)) + 1;
  for (const auto& t : towers.towers) {
    const CrossedElement p = CrossedElement::indicator(t.base);
    const auto& els = t.shape.elements();
    for (const auto& gi : els)
      for (const auto& gj : els) {
        const CrossedElement vi = p * CrossedElement::unitary(sys, gi);
        const CrossedElement vj = p * CrossedElement::unitary(sys, gj);
        CrossedElement diff = vi * vj.adjoint();
        if (gi == gj) diff = diff - p;
        if (diff.is_zero()) continue;
        const NormEstimate n =
            matrix_norm(represent_interior(diff, w, margin), diff.coefficient_norm_bound());
        rep.worst_matrix_unit_error = std::max(rep.worst_matrix_unit_error, n.value);
      }
  }
  rep.matrix_units_ok = rep.worst_matrix_unit_error <= tol;

  // Diagonal embedding respects products, formally and exactly.
  rep.diagonal_embedding_ok = true;
  for (const auto& t : towers.towers) {
    const CrossedElement chi = CrossedElement::indicator(t.base);
    CrossedElement lhs_a(sys), lhs_b(sys), rhs(sys);
    int idx = 0;
    for (const auto& g : t.shape.elements()) {
      const CrossedElement ug = CrossedElement::unitary(sys, g);
      const CrossedElement ug_star = CrossedElement::unitary(sys, -g);
      const CrossedElement ag = (1.0 + 0.25 * idx) * chi;
      const CrossedElement bg = (2.0 - 0.125 * idx) * chi;
      lhs_a = lhs_a + ug_star * ag * ug;
      lhs_b = lhs_b + ug_star * bg * ug;
      rhs = rhs + ug_star * (ag * bg) * ug;
      ++idx;
    }
    if (!(lhs_a * lhs_b == rhs)) rep.diagonal_embedding_ok = false;
  }
  return rep;
}

}  // namespace cantor
