#include "cantor/crossed.hpp"

#include <cmath>
#include <stdexcept>

namespace cantor {

namespace {
bool lc_is_zero(const LcReal& f) {
  for (double v : f.values())
    if (v != 0.0) return false;
  return true;
}
}  // namespace

CrossedElement CrossedElement::function(const LcReal& f) {
  CrossedElement a(f.system());
  if (!lc_is_zero(f)) a.coeffs_.emplace(GroupElement::zero(f.system()->dim()), f);
  return a;
}

CrossedElement CrossedElement::indicator(const Clopen& e) {
  return function(LcReal::indicator(e));
}

CrossedElement CrossedElement::unitary(SystemPtr sys, const GroupElement& g) {
  CrossedElement a(sys);
  a.coeffs_.emplace(g, LcReal::constant(sys, 1.0));
  return a;
}

CrossedElement CrossedElement::one(SystemPtr sys) {
  const GroupElement e = GroupElement::zero(sys->dim());
  return unitary(std::move(sys), e);
}

FiniteGroupSet CrossedElement::support() const {
  std::vector<GroupElement> out;
  for (const auto& [g, f] : coeffs_) out.push_back(g);
  return FiniteGroupSet(std::move(out));
}

const LcReal* CrossedElement::coefficient(const GroupElement& g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? nullptr : &it->second;
}

void CrossedElement::set_coefficient(const GroupElement& g, const LcReal& f) {
  if (lc_is_zero(f))
    coeffs_.erase(g);
  else
    coeffs_[g] = f;
}

void CrossedElement::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = lc_is_zero(it->second) ? coeffs_.erase(it) : std::next(it);
}

CrossedElement CrossedElement::adjoint() const {
  CrossedElement out(sys_);
  for (const auto& [g, f] : coeffs_) out.coeffs_.emplace(-g, f.composed(-g));
  return out;
}

CrossedElement operator+(const CrossedElement& a, const CrossedElement& b) {
  if (!same_system(*a.sys_, *b.sys_)) throw std::invalid_argument("crossed elements over different systems");
  CrossedElement out = a;
  for (const auto& [g, f] : b.coeffs_) {
    auto it = out.coeffs_.find(g);
    if (it == out.coeffs_.end())
      out.coeffs_.emplace(g, f);
    else
      it->second = it->second + f;
  }
  out.prune();
  return out;
}

CrossedElement operator-(const CrossedElement& a, const CrossedElement& b) {
  return a + (-1.0) * b;
}

CrossedElement operator*(double s, const CrossedElement& a) {
  CrossedElement out = a;
  for (auto& [g, f] : out.coeffs_) f = s * f;
  out.prune();
  return out;
}

CrossedElement operator*(const CrossedElement& a, const CrossedElement& b) {
  if (!same_system(*a.sys_, *b.sys_)) throw std::invalid_argument("crossed elements over different systems");
  CrossedElement out(a.sys_);
  for (const auto& [g, f] : a.coeffs_)
    for (const auto& [d, h] : b.coeffs_) {
      const GroupElement target = g + d;
      const LcReal term = f * h.composed(g);
      auto it = out.coeffs_.find(target);
      if (it == out.coeffs_.end())
        out.coeffs_.emplace(target, term);
      else
        it->second = it->second + term;
    }
  out.prune();
  return out;
}

CrossedElement operator*(const LcReal& f, const CrossedElement& a) {
  return CrossedElement::function(f) * a;
}

CrossedElement operator*(const CrossedElement& a, const LcReal& f) {
  return a * CrossedElement::function(f);
}

bool operator==(const CrossedElement& a, const CrossedElement& b) {
  const CrossedElement diff = a - b;
  return diff.coeffs_.empty();
}

LcReal CrossedElement::conditional_expectation() const {
  const GroupElement e = GroupElement::zero(sys_->dim());
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? LcReal::constant(sys_, 0.0) : it->second;
}

double CrossedElement::coefficient_norm_bound() const {
  double total = 0.0;
  for (const auto& [g, f] : coeffs_) total += f.sup_norm();
  return total;
}

double CrossedElement::max_coefficient_norm() const {
  double m = 0.0;
  for (const auto& [g, f] : coeffs_) m = std::max(m, f.sup_norm());
  return m;
}

std::string CrossedElement::str() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (const auto& [g, f] : coeffs_) {
    if (!s.empty()) s += " + ";
    s += "f[r=" + std::to_string(f.radius()) + "] u_" + g.str();
  }
  return s;
}

}  // namespace cantor
