#pragma once

#include <map>
#include <string>
#include <vector>

#include "cantor/lcfn.hpp"

namespace cantor {

/// Finite formal sum  a = sum_g f_g u_g  with locally constant real
/// coefficients, under the covariance relation u_g f u_g* = f(. g).
/// Products follow (f u_g)(h u_d) = f * (h o g) u_{g+d}, so
///     (ab)_e = sum_{g+d=e} a_g * (b_d o g),
/// and the adjoint is (a*)_d = a_{-d} o d (real coefficients).
class CrossedElement {
 public:
  CrossedElement() = default;
  explicit CrossedElement(SystemPtr sys) : sys_(std::move(sys)) {}

  static CrossedElement function(const LcReal& f);
  static CrossedElement indicator(const Clopen& e);
  static CrossedElement unitary(SystemPtr sys, const GroupElement& g);
  static CrossedElement one(SystemPtr sys);

  const SystemPtr& system() const { return sys_; }
  const std::map<GroupElement, LcReal>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Support in the group: the g with a nonzero coefficient.
  FiniteGroupSet support() const;
  const LcReal* coefficient(const GroupElement& g) const;
  void set_coefficient(const GroupElement& g, const LcReal& f);

  CrossedElement adjoint() const;
  friend CrossedElement operator+(const CrossedElement& a, const CrossedElement& b);
  friend CrossedElement operator-(const CrossedElement& a, const CrossedElement& b);
  friend CrossedElement operator*(const CrossedElement& a, const CrossedElement& b);
  friend CrossedElement operator*(double s, const CrossedElement& a);
  friend CrossedElement operator*(const LcReal& f, const CrossedElement& a);
  friend CrossedElement operator*(const CrossedElement& a, const LcReal& f);

  friend bool operator==(const CrossedElement& a, const CrossedElement& b);
  friend bool operator!=(const CrossedElement& a, const CrossedElement& b) { return !(a == b); }

  /// Conditional expectation onto C(X): the coefficient of the identity.
  LcReal conditional_expectation() const;

  /// Upper bound sum_g ||f_g||_inf for the C*-norm.
  double coefficient_norm_bound() const;
  /// Largest coefficient sup norm (the M of the tower construction).
  double max_coefficient_norm() const;

  std::string str() const;

 private:
  void prune();
  SystemPtr sys_;
  std::map<GroupElement, LcReal> coeffs_;
};

}  // namespace cantor
