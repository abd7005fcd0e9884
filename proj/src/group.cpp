#include "cantor/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace cantor {

bool GroupElement::is_zero() const {
  for (auto c : coords)
    if (c != 0) return false;
  return true;
}

std::int64_t GroupElement::sup_norm() const {
  std::int64_t m = 0;
  for (auto c : coords) m = std::max(m, std::abs(c));
  return m;
}

static void check_rank(const GroupElement& a, const GroupElement& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("GroupElement rank mismatch");
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  check_rank(a, b);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  check_rank(a, b);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

GroupElement GroupElement::operator-() const {
  GroupElement r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

std::string GroupElement::str() const {
  if (coords.size() == 1) return std::to_string(coords[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

FiniteGroupSet::FiniteGroupSet(std::vector<GroupElement> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  for (const auto& e : elems_)
    if (e.rank() != elems_[0].rank()) throw std::invalid_argument("FiniteGroupSet rank mismatch");
}

FiniteGroupSet FiniteGroupSet::box(int d, std::int64_t n) {
  if (d < 1 || n < 1) throw std::invalid_argument("box: d >= 1 and n >= 1 required");
  std::vector<GroupElement> out;
  GroupElement cur = GroupElement::zero(d);
  while (true) {
    out.push_back(cur);
    int k = d - 1;
    while (k >= 0) {
      if (++cur.coords[k] < n) break;
      cur.coords[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet FiniteGroupSet::interval(std::int64_t a, std::int64_t b) {
  std::vector<GroupElement> out;
  for (std::int64_t i = a; i <= b; ++i) out.push_back(GroupElement::z(i));
  return FiniteGroupSet(std::move(out));
}

bool FiniteGroupSet::contains(const GroupElement& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

std::int64_t FiniteGroupSet::max_sup_norm() const {
  std::int64_t m = 0;
  for (const auto& e : elems_) m = std::max(m, e.sup_norm());
  return m;
}

FiniteGroupSet FiniteGroupSet::translated(const GroupElement& g) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e + g);
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet FiniteGroupSet::negated() const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(-e);
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet set_union(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  std::vector<GroupElement> out;
  std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                 std::back_inserter(out));
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet set_intersect(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  std::vector<GroupElement> out;
  std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                        std::back_inserter(out));
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet set_difference(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  std::vector<GroupElement> out;
  std::set_difference(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                      std::back_inserter(out));
  return FiniteGroupSet(std::move(out));
}

FiniteGroupSet set_product(const FiniteGroupSet& a, const FiniteGroupSet& b) {
  std::set<GroupElement> out;
  for (const auto& f : a.elements())
    for (const auto& k : b.elements()) out.insert(f + k);
  return FiniteGroupSet(std::vector<GroupElement>(out.begin(), out.end()));
}

std::string FiniteGroupSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += elems_[i].str();
  }
  return s + "}";
}

FiniteGroupSet folner_boxes(int d, std::int64_t n) { return FiniteGroupSet::box(d, n); }

double invariance_defect(const FiniteGroupSet& F, const FiniteGroupSet& K) {
  if (F.empty()) throw std::invalid_argument("invariance_defect: F must be nonempty");
  const FiniteGroupSet FK = set_product(F, K);
  const std::size_t sym =
      set_difference(FK, F).size() + set_difference(F, FK).size();
  return static_cast<double>(sym) / static_cast<double>(F.size());
}

FiniteGroupSet interior(const FiniteGroupSet& F, const FiniteGroupSet& K) {
  std::vector<GroupElement> out;
  for (const auto& g : F.elements()) {
    bool in = true;
    for (const auto& k : K.elements()) {
      if (!F.contains(g + k)) { in = false; break; }
    }
    if (in) out.push_back(g);
  }
  return FiniteGroupSet(std::move(out));
}

}  // namespace cantor
