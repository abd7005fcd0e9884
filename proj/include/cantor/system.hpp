#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cantor/group.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// A configuration word. Symbols are stored as raw byte indices into the
/// factor alphabet (not display characters). For product systems the
/// factor segments are concatenated in factor order.
///
/// Word conventions per factor kind, for a given radius r:
///   - substitution subshift: symbols at positions -r..r (length 2r+1),
///   - finite cycle: same window convention (length 2r+1),
///   - odometer: the first r+1 digits of the point, least significant first.
/// The spec'd cylinders [0], [00], [0000] of an odometer are digit prefixes,
/// which is what makes translation by +1 exact carry arithmetic.
using Word = std::string;

enum class SystemKind { Odometer, Substitution, Cycle, Product };

class System;
using SystemPtr = std::shared_ptr<const System>;

/// Generator of a Cantor dynamical system: a minimal Z-system (odometer,
/// primitive substitution, finite cycle) or a Z^d product of such factors.
/// Immutable; all queries are const and thread-safe.
class System {
 public:
  static SystemPtr odometer(std::vector<int> bases);
  static SystemPtr substitution(const std::map<std::string, std::string>& rules);
  static SystemPtr cycle(int n);
  static SystemPtr product(std::vector<SystemPtr> factors);

  SystemKind kind() const { return kind_; }
  /// Rank of the acting group (1 for Z-systems, d for products).
  int dim() const;
  int factor_count() const { return kind_ == SystemKind::Product ? static_cast<int>(factors_.size()) : 1; }
  const System& factor(int i) const;
  /// Shared handle to a product factor (product systems only).
  const SystemPtr& factor_ptr(int i) const;

  bool minimal() const { return minimal_; }
  bool free_action() const { return free_; }
  bool uniquely_ergodic() const { return uniquely_ergodic_; }

  /// Total stored word length at the given radius (sum over factors).
  int word_length(int radius) const;
  /// Number of admissible words at the radius; saturates at UINT64_MAX/2.
  std::uint64_t admissible_count(int radius) const;
  /// Enumerated admissible words, sorted. Throws if the count exceeds the
  /// enumeration cap (1<<21); estimators fall back to sampling above it.
  const std::vector<Word>& admissible(int radius) const;
  bool is_admissible(const Word& w, int radius) const;
  std::size_t atom_index(const Word& w, int radius) const;

  /// Atom at radius r of the translated point x*gamma, where w is the atom
  /// of x at radius R. Requires R >= needed_radius(r, gamma).
  Word trace_word(const Word& w, int R, const GroupElement& gamma, int r) const;
  /// Smallest radius R such that trace_word(.., R, gamma, r) is defined.
  int needed_radius(int r, const GroupElement& gamma) const;
  /// True when translation never forces radius growth (no substitution factor).
  bool translation_preserves_radius() const;

  /// Exact invariant mass of the radius-r cylinder on the word: Haar mass
  /// for odometers, 1/n for cycles, Perron word frequency for substitutions,
  /// product over factors.
  double word_measure(const Word& w, int radius) const;
  /// Exact rational mass; throws for substitution factors.
  Rational word_measure_rational(const Word& w, int radius) const;

  // Substitution-factor helpers (1-D, kind == Substitution).
  /// sigma^k(first letter) as a symbol string.
  std::string substitution_power(int k) const;
  /// Smallest power whose factor set of the given word length has
  /// stabilized across two successive powers (and is long enough).
  int stabilized_power(std::size_t word_len) const;
  int alphabet_size() const;

  std::string display(const Word& w) const;
  Word from_display(const std::string& s, int radius) const;

  /// Canonical structural description; equal strings = same system.
  const std::string& describe() const { return description_; }
  friend bool same_system(const System& a, const System& b) {
    return a.description_ == b.description_;
  }

  // Raw generator data (read-only; used by serialization and oracles).
  const std::vector<int>& odometer_bases() const { return bases_; }
  int cycle_period() const { return cycle_n_; }
  const std::vector<char>& substitution_letters() const { return letters_; }
  const std::vector<std::string>& substitution_images() const { return images_; }

  static constexpr std::uint64_t kEnumCap = 1ull << 21;

 private:
  System() = default;
  void finalize();

  // 1-D helpers
  Word trace_word_1d(const Word& w, int R, std::int64_t gamma, int r) const;
  std::vector<Word> admissible_1d(int radius) const;
  std::uint64_t admissible_count_1d(int radius) const;
  const std::vector<double>& substitution_frequencies(int radius) const;
  void check_substitution() const;

  std::int64_t odometer_modulus(int digits) const;
  std::int64_t odometer_value(const Word& w) const;
  Word odometer_word(std::int64_t v, int digits) const;

  SystemKind kind_ = SystemKind::Cycle;
  std::vector<int> bases_;                // odometer
  std::vector<char> letters_;             // substitution alphabet (display chars)
  std::vector<std::string> images_;       // substitution images as symbol strings
  int cycle_n_ = 1;
  std::vector<SystemPtr> factors_;        // product

  bool minimal_ = true;
  bool free_ = true;
  bool uniquely_ergodic_ = true;
  std::string description_;

  mutable std::mutex cache_mu_;
  mutable std::map<int, std::vector<Word>> admissible_cache_;
  mutable std::map<int, std::vector<double>> freq_cache_;
  mutable std::map<int, std::string> power_cache_;
};

}  // namespace cantor
