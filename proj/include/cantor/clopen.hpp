#pragma once

#include <string>
#include <vector>

#include "cantor/rational.hpp"
#include "cantor/system.hpp"

namespace cantor {

/// Clopen subset of the phase space, canonicalized as a sorted set of
/// admissible words at a fixed radius. Boolean operations lift both
/// operands to the larger radius, so the algebra is closed and exact.
class Clopen {
 public:
  Clopen() = default;

  static Clopen empty(SystemPtr sys, int radius = 0);
  static Clopen full(SystemPtr sys, int radius = 0);
  static Clopen from_words(SystemPtr sys, int radius, std::vector<Word> words);
  /// Cylinder on a display word, e.g. "0000" on the base-2 odometer.
  static Clopen cylinder(SystemPtr sys, const std::string& display_word, int radius);

  const SystemPtr& system() const { return sys_; }
  int radius() const { return radius_; }
  const std::vector<Word>& words() const { return words_; }

  bool is_empty() const { return words_.empty(); }
  bool is_full() const;
  bool valid() const { return static_cast<bool>(sys_); }

  /// Re-express at a larger radius (word set refined accordingly).
  Clopen lifted(int radius) const;
  /// Exact image under the group action: { x*gamma : x in E }.
  Clopen translated(const GroupElement& gamma) const;

  bool contains_word(const Word& w) const;
  /// Membership of the cylinder [w at radius R]; requires R large enough
  /// to determine membership at this clopen's radius.
  bool contains_atom(const Word& w, int R) const;

  bool subset_of(const Clopen& other) const;
  bool disjoint_from(const Clopen& other) const;

  friend Clopen set_union(const Clopen& a, const Clopen& b);
  friend Clopen set_intersect(const Clopen& a, const Clopen& b);
  friend Clopen set_difference(const Clopen& a, const Clopen& b);
  Clopen complement() const;

  friend bool operator==(const Clopen& a, const Clopen& b);
  friend bool operator!=(const Clopen& a, const Clopen& b) { return !(a == b); }

  std::string str() const;

 private:
  SystemPtr sys_;
  int radius_ = 0;
  std::vector<Word> words_;
};

/// Common-radius pair for binary operations.
int common_radius(const Clopen& a, const Clopen& b);

}  // namespace cantor
