#include "cantor/ay_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

AyModel make_ay_model(const SystemPtr& sys, const Clopen& y, int coefficient_radius_hint) {
  AyModel m;
  m.rd = first_return_analysis(sys, y);
  int radius = coefficient_radius_hint;
  for (const auto& r : m.rd.returns) {
    radius = std::max(radius, r.cell.radius());
    radius = std::max(radius,
                      sys->needed_radius(coefficient_radius_hint, GroupElement::z(r.time)));
  }
  m.eval_radius = radius;
  for (const auto& r : m.rd.returns) {
    AyModel::Block b;
    b.height = r.time;
    b.cell_atoms = r.cell.lifted(radius).words();
    m.blocks.push_back(std::move(b));
  }
  return m;
}

bool in_ay_subalgebra(const AyModel& m, const CrossedElement& a, std::string* why) {
  const SystemPtr sys = m.rd.base.system();
  const Clopen& y = m.rd.base;
  for (const auto& [g, f] : a.coefficients()) {
    const std::int64_t k = g.coords[0];
    // With u g = (g o 1) u_1 and g|_Y = 0, the positive-power words vanish
    // on Y*(-1), ..., Y*(-k); the adjoint words on Y, Y*1, ..., Y*(|k|-1).
    Clopen forbidden = Clopen::empty(sys, y.radius());
    if (k > 0)
      for (std::int64_t i = 1; i <= k; ++i)
        forbidden = set_union(forbidden, y.translated(GroupElement::z(-i)));
    else if (k < 0)
      for (std::int64_t i = 0; i < -k; ++i)
        forbidden = set_union(forbidden, y.translated(GroupElement::z(i)));
    else
      continue;
    if (!f.support().disjoint_from(forbidden)) {
      if (why)
        *why = "coefficient of u_" + g.str() + " does not vanish on the required translates of Y";
      return false;
    }
  }
  return true;
}

std::vector<std::vector<Eigen::MatrixXd>> ay_map(const AyModel& m, const CrossedElement& a) {
  std::string why;
  if (!in_ay_subalgebra(m, a, &why)) throw std::invalid_argument("ay_map: " + why);
  const SystemPtr sys = m.rd.base.system();

  int needed = 0;
  for (const auto& [g, f] : a.coefficients()) {
    for (const auto& b : m.blocks)
      needed = std::max(needed, sys->needed_radius(f.radius(), GroupElement::z(b.height)));
  }
  if (needed > m.eval_radius)
    throw std::invalid_argument("ay_map: model radius too small; rebuild with hint >= " +
                                std::to_string(needed));

  std::vector<std::vector<Eigen::MatrixXd>> out;
  for (const auto& b : m.blocks) {
    std::vector<Eigen::MatrixXd> mats;
    for (const auto& atom : b.cell_atoms) {
      Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(b.height, b.height);
      for (const auto& [g, f] : a.coefficients()) {
        const std::int64_t off = g.coords[0];
        for (std::int64_t row = 0; row < b.height; ++row) {
          const std::int64_t col = row + off;
          if (col < 0 || col >= b.height) continue;
          mat(row, col) = f.value_at(sys->trace_word(atom, m.eval_radius,
                                                     GroupElement::z(row), f.radius()),
                                     f.radius());
        }
      }
      mats.push_back(std::move(mat));
    }
    out.push_back(std::move(mats));
  }
  return out;
}

}  // namespace cantor
