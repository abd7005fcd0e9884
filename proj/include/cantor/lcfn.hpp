#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/system.hpp"
#include "cantor/window.hpp"

namespace cantor {

/// Locally constant function on the phase space: one value per admissible
/// word at a fixed radius. Arithmetic lifts operands to the common radius,
/// so identities between locally constant functions are exact (bit-exact
/// for rational value types, IEEE-exact for double inputs with dyadic data).
template <typename T>
class LcFn {
 public:
  LcFn() = default;

  static LcFn constant(SystemPtr sys, T v, int radius = 0) {
    LcFn f;
    f.radius_ = radius;
    f.values_.assign(sys->admissible(radius).size(), v);
    f.sys_ = std::move(sys);
    return f;
  }

  static LcFn indicator(const Clopen& e) {
    LcFn f;
    f.sys_ = e.system();
    f.radius_ = e.radius();
    const auto& all = f.sys_->admissible(f.radius_);
    f.values_.assign(all.size(), T(0));
    for (const auto& w : e.words()) f.values_[f.sys_->atom_index(w, f.radius_)] = T(1);
    return f;
  }

  static LcFn from_values(SystemPtr sys, int radius, std::vector<T> values) {
    if (values.size() != sys->admissible(radius).size())
      throw std::invalid_argument("LcFn: value count != atom count");
    LcFn f;
    f.sys_ = std::move(sys);
    f.radius_ = radius;
    f.values_ = std::move(values);
    return f;
  }

  bool valid() const { return static_cast<bool>(sys_); }
  const SystemPtr& system() const { return sys_; }
  int radius() const { return radius_; }
  const std::vector<T>& values() const { return values_; }

  T value_at(const Word& w, int R) const {
    return values_[sys_->atom_index(sys_->trace_word(w, R, GroupElement::zero(sys_->dim()), radius_),
                                    radius_)];
  }

  T eval(const OrbitWindow& w, const GroupElement& i) const {
    return values_[sys_->atom_index(w.atom(i, radius_), radius_)];
  }
  T eval(const OrbitWindow& w, std::int64_t i) const {
    return values_[sys_->atom_index(w.atom(i, radius_), radius_)];
  }

  LcFn lifted(int radius) const {
    if (radius == radius_) return *this;
    if (radius < radius_) throw std::invalid_argument("LcFn lift to smaller radius");
    LcFn f;
    f.sys_ = sys_;
    f.radius_ = radius;
    const auto& all = sys_->admissible(radius);
    f.values_.reserve(all.size());
    const GroupElement zero = GroupElement::zero(sys_->dim());
    for (const auto& w : all)
      f.values_.push_back(values_[sys_->atom_index(sys_->trace_word(w, radius, zero, radius_), radius_)]);
    return f;
  }

  /// f.composed(g) is the function x -> f(x*g), the covariance translate.
  LcFn composed(const GroupElement& g) const {
    const int r = sys_->needed_radius(radius_, g);
    LcFn f;
    f.sys_ = sys_;
    f.radius_ = r;
    const auto& all = sys_->admissible(r);
    f.values_.reserve(all.size());
    for (const auto& w : all)
      f.values_.push_back(values_[sys_->atom_index(sys_->trace_word(w, r, g, radius_), radius_)]);
    return f;
  }

  friend LcFn operator+(const LcFn& a, const LcFn& b) { return zip(a, b, [](T x, T y) { return x + y; }); }
  friend LcFn operator-(const LcFn& a, const LcFn& b) { return zip(a, b, [](T x, T y) { return x - y; }); }
  friend LcFn operator*(const LcFn& a, const LcFn& b) { return zip(a, b, [](T x, T y) { return x * y; }); }
  friend LcFn operator*(T s, const LcFn& a) { return a.map([&](T x) { return s * x; }); }

  template <typename Fn>
  LcFn map(Fn&& fn) const {
    LcFn f = *this;
    for (auto& v : f.values_) v = fn(v);
    return f;
  }

  /// Entrywise max{t - eps, 0}; the (a - eps)_+ cut for functions.
  LcFn cut_down(T eps) const {
    return map([&](T v) { return v - eps > T(0) ? v - eps : T(0); });
  }

  Clopen support() const {
    std::vector<Word> words;
    const auto& all = sys_->admissible(radius_);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!(values_[i] == T(0))) words.push_back(all[i]);
    return Clopen::from_words(sys_, radius_, std::move(words));
  }

  T max_value() const {
    T m = values_.empty() ? T(0) : values_[0];
    for (const auto& v : values_) m = std::max(m, v);
    return m;
  }

  /// Exact sup norm (every admissible word names a nonempty cylinder).
  double sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::fabs(static_cast<double>(v)));
    return m;
  }

  friend bool operator==(const LcFn& a, const LcFn& b) {
    const int r = std::max(a.radius_, b.radius_);
    return a.lifted(r).values_ == b.lifted(r).values_;
  }
  friend bool operator!=(const LcFn& a, const LcFn& b) { return !(a == b); }

 private:
  template <typename Fn>
  static LcFn zip(const LcFn& a, const LcFn& b, Fn&& fn) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized LcFn");
    if (!same_system(*a.sys_, *b.sys_)) throw std::invalid_argument("LcFn systems differ");
    const int r = std::max(a.radius_, b.radius_);
    LcFn x = a.lifted(r), y = b.lifted(r);
    for (std::size_t i = 0; i < x.values_.size(); ++i) x.values_[i] = fn(x.values_[i], y.values_[i]);
    return x;
  }

  SystemPtr sys_;
  int radius_ = 0;
  std::vector<T> values_;
};

using LcReal = LcFn<double>;
using LcRational = LcFn<Rational>;

}  // namespace cantor
