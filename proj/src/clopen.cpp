#include "cantor/clopen.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

Clopen Clopen::empty(SystemPtr sys, int radius) {
  Clopen c;
  c.sys_ = std::move(sys);
  c.radius_ = radius;
  return c;
}

Clopen Clopen::full(SystemPtr sys, int radius) {
  Clopen c;
  c.radius_ = radius;
  c.words_ = sys->admissible(radius);
  c.sys_ = std::move(sys);
  return c;
}

Clopen Clopen::from_words(SystemPtr sys, int radius, std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const auto& w : words)
    if (!sys->is_admissible(w, radius))
      throw std::invalid_argument("clopen word not admissible: " + sys->display(w));
  Clopen c;
  c.sys_ = std::move(sys);
  c.radius_ = radius;
  c.words_ = std::move(words);
  return c;
}

Clopen Clopen::cylinder(SystemPtr sys, const std::string& display_word, int radius) {
  Word w = sys->from_display(display_word, radius);
  return from_words(std::move(sys), radius, {std::move(w)});
}

bool Clopen::is_full() const { return words_.size() == sys_->admissible_count(radius_); }

Clopen Clopen::lifted(int radius) const {
  if (radius < radius_) throw std::invalid_argument("lift to smaller radius");
  if (radius == radius_) return *this;
  Clopen out;
  out.sys_ = sys_;
  out.radius_ = radius;
  const GroupElement zero = GroupElement::zero(sys_->dim());
  for (const auto& w : sys_->admissible(radius))
    if (contains_word(sys_->trace_word(w, radius, zero, radius_))) out.words_.push_back(w);
  return out;
}

Clopen Clopen::translated(const GroupElement& gamma) const {
  const int r_out = sys_->needed_radius(radius_, gamma);
  Clopen out;
  out.sys_ = sys_;
  out.radius_ = r_out;
  // x in E*gamma iff x*(-gamma) in E.
  for (const auto& w : sys_->admissible(r_out))
    if (contains_word(sys_->trace_word(w, r_out, -gamma, radius_))) out.words_.push_back(w);
  return out;
}

bool Clopen::contains_word(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

bool Clopen::contains_atom(const Word& w, int R) const {
  if (R < radius_) throw std::invalid_argument("atom radius too small for membership query");
  return contains_word(sys_->trace_word(w, R, GroupElement::zero(sys_->dim()), radius_));
}

int common_radius(const Clopen& a, const Clopen& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized clopen");
  if (!same_system(*a.system(), *b.system()))
    throw std::invalid_argument("clopen operands over different systems");
  return std::max(a.radius(), b.radius());
}

bool Clopen::subset_of(const Clopen& other) const {
  const int r = common_radius(*this, other);
  const Clopen a = lifted(r), b = other.lifted(r);
  return std::includes(b.words_.begin(), b.words_.end(), a.words_.begin(), a.words_.end());
}

bool Clopen::disjoint_from(const Clopen& other) const {
  return set_intersect(*this, other).is_empty();
}

Clopen set_union(const Clopen& a, const Clopen& b) {
  const int r = common_radius(a, b);
  const Clopen x = a.lifted(r), y = b.lifted(r);
  Clopen out;
  out.sys_ = x.sys_;
  out.radius_ = r;
  std::set_union(x.words_.begin(), x.words_.end(), y.words_.begin(), y.words_.end(),
                 std::back_inserter(out.words_));
  return out;
}

Clopen set_intersect(const Clopen& a, const Clopen& b) {
  const int r = common_radius(a, b);
  const Clopen x = a.lifted(r), y = b.lifted(r);
  Clopen out;
  out.sys_ = x.sys_;
  out.radius_ = r;
  std::set_intersection(x.words_.begin(), x.words_.end(), y.words_.begin(), y.words_.end(),
                        std::back_inserter(out.words_));
  return out;
}

Clopen set_difference(const Clopen& a, const Clopen& b) {
  const int r = common_radius(a, b);
  const Clopen x = a.lifted(r), y = b.lifted(r);
  Clopen out;
  out.sys_ = x.sys_;
  out.radius_ = r;
  std::set_difference(x.words_.begin(), x.words_.end(), y.words_.begin(), y.words_.end(),
                      std::back_inserter(out.words_));
  return out;
}

Clopen Clopen::complement() const {
  Clopen out;
  out.sys_ = sys_;
  out.radius_ = radius_;
  const auto& all = sys_->admissible(radius_);
  std::set_difference(all.begin(), all.end(), words_.begin(), words_.end(),
                      std::back_inserter(out.words_));
  return out;
}

bool operator==(const Clopen& a, const Clopen& b) {
  const int r = common_radius(a, b);
  return a.lifted(r).words_ == b.lifted(r).words_;
}

std::string Clopen::str() const {
  std::string s = "{r=" + std::to_string(radius_) + ":";
  for (std::size_t i = 0; i < words_.size() && i < 16; ++i) {
    if (i) s += ",";
    s += sys_->display(words_[i]);
  }
  if (words_.size() > 16) s += ",...(" + std::to_string(words_.size()) + ")";
  return s + "}";
}

}  // namespace cantor
