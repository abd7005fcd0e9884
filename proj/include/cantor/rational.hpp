#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cantor {

/// Exact rational with 64-bit numerator/denominator. Overflow throws:
/// the desk-scale measures and partition-of-unity coefficients handled
/// here stay far below the limits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  explicit operator double() const { return to_double(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                    checked(i128(a.den_) * b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.num_), checked(i128(a.den_) * b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(checked(i128(a.num_) * b.den_), checked(i128(a.den_) * b.num_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static std::int64_t checked(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw std::overflow_error("Rational overflow");
    return static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace cantor
