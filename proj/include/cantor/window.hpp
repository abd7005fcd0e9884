#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/system.hpp"

namespace cantor {

/// Deterministic 64-bit stream used everywhere a seed is required.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// A legal orbit segment of length L (per axis for products). Seed 0 pins
/// the canonical start (zero point / first letter / phase 0).
class OrbitWindow {
 public:
  static OrbitWindow generate(SystemPtr sys, std::int64_t length, std::uint64_t seed);

  const SystemPtr& system() const { return sys_; }
  std::int64_t length() const { return length_; }
  std::uint64_t seed() const { return seed_; }

  /// Atom of x * i at the given radius (1-D index form).
  Word atom(std::int64_t i, int radius) const;
  Word atom(const GroupElement& i, int radius) const;

  /// Valid index range [lo, hi) for radius-r queries along one axis.
  std::int64_t valid_lo(int radius) const;
  std::int64_t valid_hi(int radius) const;

  bool in_clopen(const Clopen& e, std::int64_t i) const;
  bool in_clopen(const Clopen& e, const GroupElement& i) const;

  /// Display symbol stream entry (first digit for odometers).
  char symbol(std::int64_t i) const;

 private:
  struct Axis {
    // substitution: materialized symbols; odometer: start digits; cycle: phase
    std::string symbols;
    std::vector<int> start_digits;
    int phase = 0;
  };

  SystemPtr sys_;
  std::int64_t length_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Axis> axes_;

  Word axis_atom(int axis, std::int64_t i, int radius) const;
};

struct OcapEstimate {
  double value = 0.0;
  std::int64_t n = 0;
  bool exhaustive = false;
  std::int64_t samples = 0;
};

/// (1/|box(n)|) * max over configurations of the visit count to E, with
/// the max exact (enumeration) whenever the atom count permits, otherwise
/// a seeded sample maximum.
OcapEstimate estimate_ocap(const SystemPtr& sys, const Clopen& e, std::int64_t n,
                           std::int64_t sample_count, std::uint64_t seed);

}  // namespace cantor
