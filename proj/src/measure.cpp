#include "cantor/measure.hpp"

#include <stdexcept>

#include "cantor/window.hpp"

namespace cantor {

InvariantMeasure InvariantMeasure::exact(SystemPtr sys) {
  InvariantMeasure m;
  m.sys_ = std::move(sys);
  m.mode_ = MeasureMode::Exact;
  return m;
}

InvariantMeasure InvariantMeasure::empirical(SystemPtr sys, std::int64_t window_length,
                                             std::uint64_t seed) {
  if (window_length < 1) throw std::invalid_argument("empirical measure: window length >= 1");
  InvariantMeasure m;
  m.sys_ = std::move(sys);
  m.mode_ = MeasureMode::Empirical;
  m.window_length_ = window_length;
  m.seed_ = seed;
  return m;
}

double InvariantMeasure::operator()(const Clopen& e) const {
  if (!same_system(*sys_, *e.system()))
    throw std::invalid_argument("measure: clopen over different system");
  if (mode_ == MeasureMode::Exact) {
    double total = 0.0;
    for (const auto& w : e.words()) total += sys_->word_measure(w, e.radius());
    return total;
  }
  const int r = e.radius();
  const int d = sys_->dim();
  OrbitWindow w = OrbitWindow::generate(sys_, window_length_, seed_);
  const std::int64_t lo = w.valid_lo(r), hi = w.valid_hi(r);
  if (hi <= lo) throw std::invalid_argument("empirical measure: window too small for clopen radius");
  std::int64_t count = 0, total = 0;
  std::vector<std::int64_t> idx(d, lo);
  for (;;) {
    GroupElement g = GroupElement::zero(d);
    for (int a = 0; a < d; ++a) g.coords[a] = idx[a];
    if (w.in_clopen(e, g)) ++count;
    ++total;
    int a = d - 1;
    while (a >= 0 && ++idx[a] == hi) idx[a--] = lo;
    if (a < 0) break;
  }
  return static_cast<double>(count) / static_cast<double>(total);
}

Rational InvariantMeasure::rational(const Clopen& e) const {
  if (mode_ != MeasureMode::Exact)
    throw std::invalid_argument("rational measure requires exact mode");
  Rational total(0);
  for (const auto& w : e.words()) total += sys_->word_measure_rational(w, e.radius());
  return total;
}

}  // namespace cantor
