#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cantor {

/// Element of Z^d, componentwise arithmetic. d = 1 for single Z-systems.
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  static GroupElement zero(int d) { return GroupElement(std::vector<std::int64_t>(d, 0)); }
  static GroupElement z(std::int64_t n) { return GroupElement({n}); }

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  std::int64_t sup_norm() const;

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  GroupElement operator-() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.coords < b.coords; }

  std::string str() const;
};

/// Finite subset of Z^d, kept sorted and duplicate-free.
class FiniteGroupSet {
 public:
  FiniteGroupSet() = default;
  explicit FiniteGroupSet(std::vector<GroupElement> elems);

  static FiniteGroupSet singleton(GroupElement g) { return FiniteGroupSet({std::move(g)}); }
  /// The box {0,...,n-1}^d.
  static FiniteGroupSet box(int d, std::int64_t n);
  /// Interval {a,...,b} in Z.
  static FiniteGroupSet interval(std::int64_t a, std::int64_t b);

  const std::vector<GroupElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const GroupElement& g) const;
  int rank() const { return elems_.empty() ? 0 : elems_[0].rank(); }
  std::int64_t max_sup_norm() const;

  FiniteGroupSet translated(const GroupElement& g) const;
  FiniteGroupSet negated() const;

  friend FiniteGroupSet set_union(const FiniteGroupSet& a, const FiniteGroupSet& b);
  friend FiniteGroupSet set_intersect(const FiniteGroupSet& a, const FiniteGroupSet& b);
  friend FiniteGroupSet set_difference(const FiniteGroupSet& a, const FiniteGroupSet& b);
  /// {f + k : f in a, k in b}
  friend FiniteGroupSet set_product(const FiniteGroupSet& a, const FiniteGroupSet& b);

  friend bool operator==(const FiniteGroupSet& a, const FiniteGroupSet& b) { return a.elems_ == b.elems_; }
  friend bool operator!=(const FiniteGroupSet& a, const FiniteGroupSet& b) { return !(a == b); }
  friend bool operator<(const FiniteGroupSet& a, const FiniteGroupSet& b) { return a.elems_ < b.elems_; }

  std::string str() const;

 private:
  std::vector<GroupElement> elems_;
};

/// The box {0,...,n-1}^d, the standard Folner sequence used throughout.
FiniteGroupSet folner_boxes(int d, std::int64_t n);

/// |FK delta F| / |F|. F must be nonempty.
double invariance_defect(const FiniteGroupSet& F, const FiniteGroupSet& K);

/// int_K(F) = {g in F : gK subset of F}.
FiniteGroupSet interior(const FiniteGroupSet& F, const FiniteGroupSet& K);

}  // namespace cantor
