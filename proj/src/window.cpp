#include "cantor/window.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cantor {

OrbitWindow OrbitWindow::generate(SystemPtr sys, std::int64_t length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("window length must be >= 1");
  OrbitWindow w;
  w.length_ = length;
  w.seed_ = seed;
  std::uint64_t state = seed;
  for (int a = 0; a < sys->dim(); ++a) {
    const System& f = sys->factor(a);
    Axis axis;
    switch (f.kind()) {
      case SystemKind::Odometer: {
        const auto& bases = f.odometer_bases();
        std::int64_t modulus = 1;
        for (int i = 0;; ++i) {
          const std::int64_t b = bases[i % bases.size()];
          if (modulus > (std::int64_t(1) << 60) / b) break;
          modulus *= b;
          axis.start_digits.push_back(
              seed == 0 ? 0 : static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(b)));
        }
        break;
      }
      case SystemKind::Cycle:
        axis.phase = seed == 0 ? 0 : static_cast<int>(splitmix64(state) %
                                                      static_cast<std::uint64_t>(f.cycle_period()));
        break;
      case SystemKind::Substitution: {
        int k = 1;
        while (static_cast<std::int64_t>(f.substitution_power(k).size()) < length) {
          ++k;
          if (k > 128) throw std::runtime_error("substitution power growth stalled");
        }
        const std::string& u = f.substitution_power(k);
        const std::uint64_t span = u.size() - static_cast<std::uint64_t>(length) + 1;
        const std::uint64_t off = seed == 0 ? 0 : splitmix64(state) % span;
        axis.symbols = u.substr(off, static_cast<std::size_t>(length));
        break;
      }
      default:
        throw std::logic_error("window axis on product kind");
    }
    w.axes_.push_back(std::move(axis));
  }
  w.sys_ = std::move(sys);
  return w;
}

Word OrbitWindow::axis_atom(int a, std::int64_t i, int radius) const {
  const System& f = sys_->factor(a);
  switch (f.kind()) {
    case SystemKind::Odometer: {
      const auto& bases = f.odometer_bases();
      if (radius + 1 > static_cast<int>(axes_[a].start_digits.size()))
        throw std::invalid_argument("window radius exceeds stored odometer digits");
      std::int64_t m = 1, v = 0;
      for (int d = 0; d <= radius; ++d) {
        v += axes_[a].start_digits[d] * m;
        m *= bases[d % bases.size()];
      }
      std::int64_t t = (v + i) % m;
      if (t < 0) t += m;
      Word w(static_cast<std::size_t>(radius + 1), 0);
      for (int d = 0; d <= radius; ++d) {
        const std::int64_t b = bases[d % bases.size()];
        w[d] = static_cast<char>(t % b);
        t /= b;
      }
      return w;
    }
    case SystemKind::Cycle: {
      const int n = f.cycle_period();
      Word w(static_cast<std::size_t>(2 * radius + 1), 0);
      for (int k = -radius; k <= radius; ++k)
        w[k + radius] = static_cast<char>((((axes_[a].phase + i + k) % n) + n) % n);
      return w;
    }
    case SystemKind::Substitution: {
      if (i - radius < 0 || i + radius >= length_)
        throw std::invalid_argument("window too small for radius-" + std::to_string(radius) +
                                    " query at index " + std::to_string(i));
      return axes_[a].symbols.substr(static_cast<std::size_t>(i - radius),
                                     static_cast<std::size_t>(2 * radius + 1));
    }
    default:
      throw std::logic_error("axis_atom on product kind");
  }
}

Word OrbitWindow::atom(std::int64_t i, int radius) const {
  if (sys_->dim() != 1) throw std::invalid_argument("1-D atom index on product window");
  return axis_atom(0, i, radius);
}

Word OrbitWindow::atom(const GroupElement& i, int radius) const {
  if (i.rank() != sys_->dim()) throw std::invalid_argument("window index rank mismatch");
  Word w;
  for (int a = 0; a < sys_->dim(); ++a) w += axis_atom(a, i.coords[a], radius);
  return w;
}

std::int64_t OrbitWindow::valid_lo(int radius) const {
  for (int a = 0; a < sys_->dim(); ++a)
    if (sys_->factor(a).kind() == SystemKind::Substitution) return radius;
  return 0;
}

std::int64_t OrbitWindow::valid_hi(int radius) const {
  for (int a = 0; a < sys_->dim(); ++a)
    if (sys_->factor(a).kind() == SystemKind::Substitution) return length_ - radius;
  return length_;
}

bool OrbitWindow::in_clopen(const Clopen& e, std::int64_t i) const {
  return e.contains_word(atom(i, e.radius()));
}

bool OrbitWindow::in_clopen(const Clopen& e, const GroupElement& i) const {
  return e.contains_word(atom(i, e.radius()));
}

char OrbitWindow::symbol(std::int64_t i) const {
  const Word w = axis_atom(0, i, 0);
  return sys_->factor(0).display(w)[0];
}

namespace {

// Count of i in [0, n) with (z + i) = v mod m.
std::int64_t residue_hits(std::int64_t z, std::int64_t v, std::int64_t m, std::int64_t n) {
  std::int64_t first = ((v - z) % m + m) % m;
  if (first >= n) return 0;
  return (n - 1 - first) / m + 1;
}

}  // namespace

OcapEstimate estimate_ocap(const SystemPtr& sys, const Clopen& e, std::int64_t n,
                           std::int64_t sample_count, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("ocap: n >= 1 required");
  if (sample_count < 1) throw std::invalid_argument("ocap: sample_count >= 1 required");
  if (!same_system(*sys, *e.system())) throw std::invalid_argument("ocap: clopen over different system");
  const int d = sys->dim();
  const int r = e.radius();
  double box = 1.0;
  for (int a = 0; a < d; ++a) box *= static_cast<double>(n);

  OcapEstimate out;
  out.n = n;

  if (e.is_empty()) {
    out.exhaustive = true;
    return out;
  }

  if (sys->translation_preserves_radius()) {
    // Residue arithmetic: memberships depend on the start atom only, and
    // the sup over configurations is exact whenever all atoms fit the budget.
    const std::uint64_t atoms = sys->admissible_count(r);
    const double cost = static_cast<double>(atoms) * static_cast<double>(e.words().size()) * d;
    if (atoms <= 100000 && cost <= 2e7) {
      std::vector<std::int64_t> mods(d);
      for (int a = 0; a < d; ++a) {
        const System& f = sys->factor(a);
        if (f.kind() == SystemKind::Cycle) {
          mods[a] = f.cycle_period();
        } else {
          std::int64_t m = 1;
          for (int i = 0; i <= r; ++i) m *= f.odometer_bases()[i % f.odometer_bases().size()];
          mods[a] = m;
        }
      }
      auto axis_value = [&](int a, const Word& seg) -> std::int64_t {
        const System& f = sys->factor(a);
        if (f.kind() == SystemKind::Cycle) return static_cast<unsigned char>(seg[r]);
        std::int64_t v = 0, place = 1;
        for (int i = 0; i <= r; ++i) {
          v += static_cast<std::int64_t>(static_cast<unsigned char>(seg[i])) * place;
          place *= f.odometer_bases()[i % f.odometer_bases().size()];
        }
        return v;
      };
      std::vector<std::vector<std::int64_t>> targets;
      for (const auto& w : e.words()) {
        std::vector<std::int64_t> t(d);
        std::size_t off = 0;
        for (int a = 0; a < d; ++a) {
          const std::size_t len = sys->factor(a).word_length(r);
          t[a] = axis_value(a, w.substr(off, len));
          off += len;
        }
        targets.push_back(std::move(t));
      }
      std::vector<std::int64_t> z(d, 0);
      std::int64_t best = 0;
      for (;;) {
        std::int64_t count = 0;
        for (const auto& t : targets) {
          std::int64_t prod = 1;
          for (int a = 0; a < d && prod > 0; ++a) prod *= residue_hits(z[a], t[a], mods[a], n);
          count += prod;
        }
        best = std::max(best, count);
        int a = d - 1;
        while (a >= 0 && ++z[a] == mods[a]) z[a--] = 0;
        if (a < 0) break;
      }
      out.value = static_cast<double>(best) / box;
      out.exhaustive = true;
      return out;
    }
  } else if (d == 1 && sys->kind() == SystemKind::Substitution) {
    // Exhaustive by sliding over sigma^k of every letter: at the stabilized
    // power these contain every admissible window of the needed length.
    const std::size_t m = static_cast<std::size_t>(n) + 2 * static_cast<std::size_t>(r);
    const int k = sys->stabilized_power(m + 1);
    std::size_t total_windows = 0;
    std::vector<std::string> expanded;
    for (int li = 0; li < sys->alphabet_size(); ++li) {
      std::string w(1, static_cast<char>(li));
      for (int it = 0; it < k; ++it) {
        std::string nw;
        for (char s : w) nw += sys->substitution_images()[static_cast<int>(s)];
        w = std::move(nw);
      }
      if (w.size() >= m) total_windows += w.size() - m + 1;
      expanded.push_back(std::move(w));
    }
    if (total_windows > 0 && total_windows <= 500000) {
      std::int64_t best = -1;
      for (const auto& w : expanded) {
        if (w.size() < m) continue;
        std::vector<char> mark(w.size(), 0);
        for (std::size_t j = r; j + r < w.size(); ++j)
          mark[j] = e.contains_word(w.substr(j - r, 2 * static_cast<std::size_t>(r) + 1)) ? 1 : 0;
        std::int64_t run = 0;
        const std::size_t first = static_cast<std::size_t>(r);
        for (std::size_t j = first; j < first + static_cast<std::size_t>(n) && j + r < w.size(); ++j)
          run += mark[j];
        std::int64_t local = run;
        for (std::size_t j = first + static_cast<std::size_t>(n); j + r < w.size(); ++j) {
          run += mark[j] - mark[j - n];
          local = std::max(local, run);
        }
        best = std::max(best, local);
      }
      if (best >= 0) {
        out.value = static_cast<double>(best) / box;
        out.exhaustive = true;
        return out;
      }
    }
  }

  // Seeded sampling fallback: max over sampled start configurations.
  std::int64_t best = 0;
  for (std::int64_t t = 0; t < sample_count; ++t) {
    OrbitWindow w = OrbitWindow::generate(sys, n + 2 * static_cast<std::int64_t>(r) + 1,
                                          seed == 0 && t == 0 ? 0 : seed + 0x9e37ull * (t + 1));
    std::vector<std::int64_t> idx(d, 0);
    std::int64_t count = 0;
    const std::int64_t lo = w.valid_lo(r);
    for (;;) {
      GroupElement g = GroupElement::zero(d);
      for (int a = 0; a < d; ++a) g.coords[a] = lo + idx[a];
      if (w.in_clopen(e, g)) ++count;
      int a = d - 1;
      while (a >= 0 && ++idx[a] == n) idx[a--] = 0;
      if (a < 0) break;
    }
    best = std::max(best, count);
  }
  out.value = static_cast<double>(best) / box;
  out.samples = sample_count;
  return out;
}

}  // namespace cantor
