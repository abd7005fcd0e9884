#pragma once

#include <cstdint>
#include <optional>

#include "cantor/clopen.hpp"
#include "cantor/rational.hpp"
#include "cantor/system.hpp"

namespace cantor {

enum class MeasureMode { Exact, Empirical };

/// Invariant probability measure of a supported system. Exact mode uses
/// Haar mass (odometers/cycles) or Perron word frequencies (substitutions);
/// Empirical mode reports Birkhoff frequencies over a seeded window of
/// recorded length so callers can bound the error.
class InvariantMeasure {
 public:
  static InvariantMeasure exact(SystemPtr sys);
  static InvariantMeasure empirical(SystemPtr sys, std::int64_t window_length, std::uint64_t seed);

  double operator()(const Clopen& e) const;
  /// Exact rational value; available when no substitution factor is present.
  Rational rational(const Clopen& e) const;

  MeasureMode mode() const { return mode_; }
  const SystemPtr& system() const { return sys_; }
  std::int64_t window_length() const { return window_length_; }
  std::uint64_t seed() const { return seed_; }

 private:
  SystemPtr sys_;
  MeasureMode mode_ = MeasureMode::Exact;
  std::int64_t window_length_ = 0;
  std::uint64_t seed_ = 0;
};

}  // namespace cantor
