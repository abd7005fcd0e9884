#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/lcfn.hpp"

namespace cantor {

template <typename T>
struct PartitionResult {
  std::vector<LcFn<T>> parts;
  bool sum_is_one_on_target = false;
  std::string failure;  // uncovered cell, when a precondition fails
};

/// Telescoping partition of unity: phi_1 = g_1, phi_k = (1-g_1)...(1-g_{k-1}) g_k.
/// Requires every g_i in [0,1] with support inside the prescribed V_i (when
/// given), and D covered by the cores {g_i = 1}. Then sum phi_i = 1 on D,
/// exactly on locally constant data.
template <typename T>
PartitionResult<T> partition_of_unity(const std::vector<LcFn<T>>& g, const Clopen& d,
                                      const std::vector<Clopen>* supports = nullptr) {
  if (g.empty()) throw std::invalid_argument("partition_of_unity: no functions");
  const SystemPtr sys = g[0].system();
  PartitionResult<T> res;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& v : g[i].values())
      if (v < T(0) || v > T(1))
        throw std::invalid_argument("partition_of_unity: g_" + std::to_string(i + 1) +
                                    " is not [0,1]-valued");
    if (supports && !g[i].support().subset_of((*supports)[i]))
      throw std::invalid_argument("partition_of_unity: g_" + std::to_string(i + 1) +
                                  " escapes its prescribed support");
  }
  // Coverage of D by the cores {g_i = 1}.
  {
    int radius = d.radius();
    for (const auto& gi : g) radius = std::max(radius, gi.radius());
    Clopen cores = Clopen::empty(sys, radius);
    for (const auto& gi : g) {
      std::vector<Word> ws;
      const LcFn<T> lifted = gi.lifted(radius);
      const auto& atoms = sys->admissible(radius);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (lifted.values()[i] == T(1)) ws.push_back(atoms[i]);
      cores = set_union(cores, Clopen::from_words(sys, radius, std::move(ws)));
    }
    const Clopen uncovered = set_difference(d.lifted(radius), cores);
    if (!uncovered.is_empty()) {
      res.failure = "core cover misses cell " + sys->display(uncovered.words().front());
      throw std::invalid_argument("partition_of_unity: " + res.failure);
    }
  }
  LcFn<T> carry = LcFn<T>::constant(sys, T(1));
  for (const auto& gi : g) {
    res.parts.push_back(carry * gi);
    carry = carry * (LcFn<T>::constant(sys, T(1)) - gi);
  }
  LcFn<T> total = LcFn<T>::constant(sys, T(0));
  for (const auto& p : res.parts) total = total + p;
  // sum phi_i = 1 - prod (1 - g_i), which is 1 wherever some g_i = 1
  res.sum_is_one_on_target = true;
  const int radius = std::max(total.radius(), d.radius());
  const LcFn<T> tl = total.lifted(radius);
  const Clopen dl = d.lifted(radius);
  const auto& atoms = sys->admissible(radius);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (dl.contains_word(atoms[i]) && !(tl.values()[i] == T(1))) res.sum_is_one_on_target = false;
  return res;
}

template <typename T>
struct ExtensionResult {
  std::vector<LcFn<T>> h;     // one per W
  bool full_sum_is_one = false;  // g + sum h_i = 1 everywhere
  std::string failure;
};

/// Extension of a subordinate family to a partition of unity:
/// h_k = (1-g)(1-g_1)...(1-g_{k-1}) g_k with g = sum phi_V. Hypotheses:
/// sum phi_V <= 1 pointwise, and {g = 1} together with the cores {g_i = 1}
/// covers the space.
template <typename T>
ExtensionResult<T> extend_partition(const std::vector<LcFn<T>>& phi_v,
                                    const std::vector<LcFn<T>>& g_w,
                                    const std::vector<Clopen>* w_supports = nullptr) {
  if (phi_v.empty() && g_w.empty()) throw std::invalid_argument("extend_partition: empty input");
  const SystemPtr sys = phi_v.empty() ? g_w[0].system() : phi_v[0].system();
  LcFn<T> g = LcFn<T>::constant(sys, T(0));
  for (const auto& p : phi_v) g = g + p;
  for (const auto& v : g.values())
    if (v < T(0) || v > T(1))
      throw std::invalid_argument("extend_partition: sum phi_V escapes [0,1]");
  for (std::size_t i = 0; i < g_w.size(); ++i) {
    for (const auto& v : g_w[i].values())
      if (v < T(0) || v > T(1))
        throw std::invalid_argument("extend_partition: g_" + std::to_string(i + 1) +
                                    " is not [0,1]-valued");
    if (w_supports && !g_w[i].support().subset_of((*w_supports)[i]))
      throw std::invalid_argument("extend_partition: g_" + std::to_string(i + 1) +
                                  " escapes its prescribed support");
  }
  // coverage: {g = 1} with the cores of the g_i must cover everything
  {
    int radius = g.radius();
    for (const auto& gi : g_w) radius = std::max(radius, gi.radius());
    const auto& atoms = sys->admissible(radius);
    const LcFn<T> gl = g.lifted(radius);
    std::vector<LcFn<T>> lifts;
    for (const auto& gi : g_w) lifts.push_back(gi.lifted(radius));
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      bool covered = gl.values()[i] == T(1);
      for (const auto& gi : lifts) covered = covered || gi.values()[i] == T(1);
      if (!covered)
        throw std::invalid_argument("extend_partition: cell " + sys->display(atoms[i]) +
                                    " lies outside every core");
    }
  }
  ExtensionResult<T> res;
  LcFn<T> carry = LcFn<T>::constant(sys, T(1)) - g;
  for (const auto& gi : g_w) {
    res.h.push_back(carry * gi);
    carry = carry * (LcFn<T>::constant(sys, T(1)) - gi);
  }
  LcFn<T> total = g;
  for (const auto& h : res.h) total = total + h;
  res.full_sum_is_one = total == LcFn<T>::constant(sys, T(1));
  return res;
}

}  // namespace cantor
