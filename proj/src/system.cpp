#include "cantor/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cantor {

namespace {

char display_symbol(int v) {
  if (v < 10) return static_cast<char>('0' + v);
  if (v < 36) return static_cast<char>('a' + v - 10);
  if (v < 62) return static_cast<char>('A' + v - 36);
  if (v == 62) return '#';
  if (v == 63) return '@';
  throw std::invalid_argument("symbol value out of display range");
}

int symbol_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 36;
  if (c == '#') return 62;
  if (c == '@') return 63;
  throw std::invalid_argument(std::string("bad display symbol '") + c + "'");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t cap = UINT64_MAX / 2;
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return a * b;
}

// Polynomial prefix hashes so fixed-length windows hash in O(1).
struct RollingHash {
  explicit RollingHash(const std::string& s) : prefix(s.size() + 1, 0), power(s.size() + 1, 1) {
    constexpr std::uint64_t base = 1099511628211ull;
    for (std::size_t i = 0; i < s.size(); ++i) {
      prefix[i + 1] = prefix[i] * base + static_cast<unsigned char>(s[i]) + 1;
      power[i + 1] = power[i] * base;
    }
  }
  std::uint64_t window(std::size_t start, std::size_t len) const {
    return prefix[start + len] - prefix[start] * power[len];
  }
  std::vector<std::uint64_t> prefix, power;
};

}  // namespace

SystemPtr System::odometer(std::vector<int> bases) {
  if (bases.empty()) throw std::invalid_argument("odometer: at least one base required");
  for (int b : bases)
    if (b < 2 || b > 64) throw std::invalid_argument("odometer: bases must be in [2, 64]");
  auto sys = std::shared_ptr<System>(new System());
  sys->kind_ = SystemKind::Odometer;
  sys->bases_ = std::move(bases);
  sys->minimal_ = true;
  sys->free_ = true;
  sys->uniquely_ergodic_ = true;
  sys->finalize();
  return sys;
}

SystemPtr System::cycle(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("cycle: period must be in [1, 64]");
  auto sys = std::shared_ptr<System>(new System());
  sys->kind_ = SystemKind::Cycle;
  sys->cycle_n_ = n;
  sys->minimal_ = true;
  sys->free_ = false;  // sigma^n = id; admitted as a brute-force oracle only
  sys->uniquely_ergodic_ = true;
  sys->finalize();
  return sys;
}

SystemPtr System::substitution(const std::map<std::string, std::string>& rules) {
  if (rules.empty()) throw std::invalid_argument("substitution: empty rule set");
  auto sys = std::shared_ptr<System>(new System());
  sys->kind_ = SystemKind::Substitution;
  for (const auto& [k, v] : rules) {
    if (k.size() != 1) throw std::invalid_argument("substitution: letters must be single characters");
    if (v.empty()) throw std::invalid_argument("substitution: images must be nonempty");
    sys->letters_.push_back(k[0]);
  }
  std::sort(sys->letters_.begin(), sys->letters_.end());
  auto index_of = [&](char c) {
    auto it = std::find(sys->letters_.begin(), sys->letters_.end(), c);
    if (it == sys->letters_.end())
      throw std::invalid_argument(std::string("substitution: image uses unknown letter '") + c + "'");
    return static_cast<char>(it - sys->letters_.begin());
  };
  sys->images_.resize(sys->letters_.size());
  for (const auto& [k, v] : rules) {
    std::string img;
    for (char c : v) img.push_back(index_of(c));
    sys->images_[index_of(k[0])] = img;
  }
  sys->check_substitution();
  sys->finalize();
  return sys;
}

SystemPtr System::product(std::vector<SystemPtr> factors) {
  if (factors.empty()) throw std::invalid_argument("product: at least one factor required");
  auto sys = std::shared_ptr<System>(new System());
  sys->kind_ = SystemKind::Product;
  for (auto& f : factors) {
    if (!f) throw std::invalid_argument("product: null factor");
    if (f->kind() == SystemKind::Product)
      for (auto& g : f->factors_) sys->factors_.push_back(g);
    else
      sys->factors_.push_back(f);
  }
  bool minimal = true, free = true;
  for (auto& f : sys->factors_) {
    minimal = minimal && f->minimal();
    free = free && f->free_action();
  }
  sys->minimal_ = minimal;
  sys->free_ = free;
  // Products of infinite factors carry the product measure as the exact
  // mode; unique ergodicity of the joint action is not claimed.
  bool all_cycles = true;
  for (auto& f : sys->factors_) all_cycles = all_cycles && f->kind() == SystemKind::Cycle;
  sys->uniquely_ergodic_ = sys->factors_.size() == 1 || all_cycles;
  sys->finalize();
  return sys;
}

void System::check_substitution() const {
  const int n = static_cast<int>(letters_.size());
  // Primitivity: some power of the boolean incidence matrix is all-positive.
  // Wielandt's bound n^2 - 2n + 2 caps the search.
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (int j = 0; j < n; ++j)
    for (char s : images_[j]) a[static_cast<int>(s)][j] = true;
  auto all_positive = [&](const std::vector<std::vector<bool>>& m) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!m[i][j]) return false;
    return true;
  };
  std::vector<std::vector<bool>> p = a;
  const int bound = n * n - 2 * n + 2;
  bool primitive = all_positive(p);
  for (int m = 1; m < std::max(bound, 1) && !primitive; ++m) {
    std::vector<std::vector<bool>> q(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (p[i][k])
          for (int j = 0; j < n; ++j)
            if (a[k][j]) q[i][j] = true;
    p = std::move(q);
    primitive = all_positive(p);
  }
  if (!primitive) throw std::invalid_argument("substitution: not primitive");
}

void System::finalize() {
  switch (kind_) {
    case SystemKind::Odometer: {
      description_ = "odometer[";
      for (std::size_t i = 0; i < bases_.size(); ++i)
        description_ += (i ? "," : "") + std::to_string(bases_[i]);
      description_ += "]";
      break;
    }
    case SystemKind::Cycle:
      description_ = "cycle[" + std::to_string(cycle_n_) + "]";
      break;
    case SystemKind::Substitution: {
      description_ = "substitution[";
      for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) description_ += ",";
        description_ += letters_[i];
        description_ += "->";
        for (char s : images_[i]) description_ += letters_[static_cast<int>(s)];
      }
      description_ += "]";
      // Aperiodicity via the Morse-Hedlund criterion: complexity must be
      // strictly increasing; equality at any length certifies periodicity.
      const int scan = 96;
      std::uint64_t prev = admissible_count_1d(0);
      free_ = true;
      for (int len = 2; len <= scan; ++len) {
        std::set<std::string> f;
        const int k = stabilized_power(len);
        const std::string& u = substitution_power(k);
        for (std::size_t i = 0; i + len <= u.size(); ++i) f.insert(u.substr(i, len));
        for (std::size_t li = 0; li < letters_.size(); ++li) {
          std::string w = images_[li];
          for (int it = 1; it < k; ++it) {
            std::string nw;
            for (char s : w) nw += images_[static_cast<int>(s)];
            w = std::move(nw);
          }
          for (std::size_t i = 0; i + len <= w.size(); ++i) f.insert(w.substr(i, len));
        }
        if (f.size() <= prev) { free_ = false; break; }
        prev = f.size();
        if (prev > 4096) break;  // complexity clearly unbounded
      }
      break;
    }
    case SystemKind::Product: {
      description_ = "product[";
      for (std::size_t i = 0; i < factors_.size(); ++i)
        description_ += (i ? ";" : "") + factors_[i]->describe();
      description_ += "]";
      break;
    }
  }
}

int System::dim() const { return kind_ == SystemKind::Product ? static_cast<int>(factors_.size()) : 1; }

const System& System::factor(int i) const {
  if (kind_ == SystemKind::Product) return *factors_.at(i);
  if (i != 0) throw std::out_of_range("factor index");
  return *this;
}

const SystemPtr& System::factor_ptr(int i) const {
  if (kind_ != SystemKind::Product) throw std::logic_error("factor_ptr on non-product system");
  return factors_.at(i);
}

int System::word_length(int radius) const {
  if (radius < 0) throw std::invalid_argument("negative radius");
  if (kind_ == SystemKind::Product) {
    int total = 0;
    for (auto& f : factors_) total += f->word_length(radius);
    return total;
  }
  return kind_ == SystemKind::Odometer ? radius + 1 : 2 * radius + 1;
}

std::uint64_t System::admissible_count_1d(int radius) const {
  switch (kind_) {
    case SystemKind::Odometer: {
      std::uint64_t m = 1;
      for (int i = 0; i <= radius; ++i)
        m = saturating_mul(m, static_cast<std::uint64_t>(bases_[i % bases_.size()]));
      return m;
    }
    case SystemKind::Cycle:
      return static_cast<std::uint64_t>(cycle_n_);
    case SystemKind::Substitution:
      return admissible(radius).size();
    default:
      throw std::logic_error("admissible_count_1d on product");
  }
}

std::uint64_t System::admissible_count(int radius) const {
  if (kind_ == SystemKind::Product) {
    std::uint64_t m = 1;
    for (auto& f : factors_) m = saturating_mul(m, f->admissible_count(radius));
    return m;
  }
  return admissible_count_1d(radius);
}

std::vector<Word> System::admissible_1d(int radius) const {
  const int len = word_length(radius);
  std::vector<Word> out;
  switch (kind_) {
    case SystemKind::Odometer: {
      const std::int64_t m = odometer_modulus(radius + 1);
      if (static_cast<std::uint64_t>(m) > kEnumCap)
        throw std::runtime_error("odometer atom enumeration over cap at radius " + std::to_string(radius));
      for (std::int64_t v = 0; v < m; ++v) out.push_back(odometer_word(v, radius + 1));
      break;
    }
    case SystemKind::Cycle: {
      for (int p = 0; p < cycle_n_; ++p) {
        Word w(len, 0);
        for (int i = -radius; i <= radius; ++i)
          w[i + radius] = static_cast<char>(((p + i) % cycle_n_ + cycle_n_) % cycle_n_);
        out.push_back(w);
      }
      break;
    }
    case SystemKind::Substitution: {
      const int k = stabilized_power(len);
      std::set<Word> words;
      for (std::size_t li = 0; li < letters_.size(); ++li) {
        std::string w(1, static_cast<char>(li));
        for (int it = 0; it < k; ++it) {
          std::string nw;
          for (char s : w) nw += images_[static_cast<int>(s)];
          w = std::move(nw);
        }
        for (std::size_t i = 0; i + len <= w.size(); ++i) words.insert(w.substr(i, len));
      }
      out.assign(words.begin(), words.end());
      break;
    }
    default:
      throw std::logic_error("admissible_1d on product");
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Word>& System::admissible(int radius) const {
  if (radius < 0) throw std::invalid_argument("negative radius");
  {
    std::unique_lock<std::mutex> lk(cache_mu_);
    auto it = admissible_cache_.find(radius);
    if (it != admissible_cache_.end()) return it->second;
  }
  std::vector<Word> words;
  if (kind_ == SystemKind::Product) {
    std::uint64_t count = 1;
    std::vector<std::vector<Word>> parts;
    for (auto& f : factors_) {
      parts.push_back(f->admissible_1d(radius));
      count = saturating_mul(count, parts.back().size());
    }
    if (count > kEnumCap)
      throw std::runtime_error("product atom enumeration over cap at radius " + std::to_string(radius));
    words.assign(1, Word());
    for (const auto& part : parts) {
      std::vector<Word> next;
      next.reserve(words.size() * part.size());
      for (const auto& w : words)
        for (const auto& p : part) next.push_back(w + p);
      words = std::move(next);
    }
    std::sort(words.begin(), words.end());
  } else {
    if (kind_ != SystemKind::Substitution && admissible_count_1d(radius) > kEnumCap)
      throw std::runtime_error("atom enumeration over cap at radius " + std::to_string(radius));
    words = admissible_1d(radius);
  }
  std::unique_lock<std::mutex> lk(cache_mu_);
  return admissible_cache_.emplace(radius, std::move(words)).first->second;
}

bool System::is_admissible(const Word& w, int radius) const {
  if (static_cast<int>(w.size()) != word_length(radius)) return false;
  switch (kind_) {
    case SystemKind::Odometer: {
      for (int i = 0; i <= radius; ++i)
        if (static_cast<unsigned char>(w[i]) >= static_cast<unsigned>(bases_[i % bases_.size()]))
          return false;
      return true;
    }
    case SystemKind::Cycle: {
      const int p = static_cast<unsigned char>(w[radius]);
      if (p >= cycle_n_) return false;
      for (int i = -radius; i <= radius; ++i)
        if (w[i + radius] != static_cast<char>(((p + i) % cycle_n_ + cycle_n_) % cycle_n_)) return false;
      return true;
    }
    case SystemKind::Substitution: {
      const auto& all = admissible(radius);
      return std::binary_search(all.begin(), all.end(), w);
    }
    case SystemKind::Product: {
      std::size_t off = 0;
      for (auto& f : factors_) {
        const std::size_t len = f->word_length(radius);
        if (!f->is_admissible(w.substr(off, len), radius)) return false;
        off += len;
      }
      return true;
    }
  }
  return false;
}

std::size_t System::atom_index(const Word& w, int radius) const {
  const auto& all = admissible(radius);
  auto it = std::lower_bound(all.begin(), all.end(), w);
  if (it == all.end() || *it != w) throw std::invalid_argument("word is not admissible: " + display(w));
  return static_cast<std::size_t>(it - all.begin());
}

int System::needed_radius(int r, const GroupElement& gamma) const {
  if (gamma.rank() != dim()) throw std::invalid_argument("group element rank mismatch");
  int extra = 0;
  for (int i = 0; i < dim(); ++i)
    if (factor(i).kind() == SystemKind::Substitution)
      extra = std::max<int>(extra, static_cast<int>(std::llabs(gamma.coords[i])));
  return r + extra;
}

bool System::translation_preserves_radius() const {
  for (int i = 0; i < dim(); ++i)
    if (factor(i).kind() == SystemKind::Substitution) return false;
  return true;
}

Word System::trace_word_1d(const Word& w, int R, std::int64_t gamma, int r) const {
  switch (kind_) {
    case SystemKind::Odometer: {
      if (r > R) throw std::logic_error("trace_word: target radius exceeds source");
      const std::int64_t m = odometer_modulus(r + 1);
      std::int64_t v = 0;
      // value modulo m uses only the first r+1 digits
      std::int64_t place = 1;
      for (int i = 0; i <= r; ++i) {
        v += static_cast<std::int64_t>(static_cast<unsigned char>(w[i])) * place;
        place *= bases_[i % bases_.size()];
      }
      std::int64_t t = (v + gamma) % m;
      if (t < 0) t += m;
      return odometer_word(t, r + 1);
    }
    case SystemKind::Cycle: {
      const int p = static_cast<unsigned char>(w[R]);
      Word out(2 * r + 1, 0);
      for (int i = -r; i <= r; ++i)
        out[i + r] = static_cast<char>((((p + gamma + i) % cycle_n_) + cycle_n_) % cycle_n_);
      return out;
    }
    case SystemKind::Substitution: {
      const std::int64_t start = gamma - r + R;
      if (start < 0 || start + 2 * r + 1 > static_cast<std::int64_t>(w.size()))
        throw std::logic_error("trace_word: source radius too small for shift");
      return w.substr(static_cast<std::size_t>(start), 2 * r + 1);
    }
    default:
      throw std::logic_error("trace_word_1d on product");
  }
}

Word System::trace_word(const Word& w, int R, const GroupElement& gamma, int r) const {
  if (gamma.rank() != dim()) throw std::invalid_argument("group element rank mismatch");
  if (kind_ != SystemKind::Product) return trace_word_1d(w, R, gamma.coords[0], r);
  Word out;
  std::size_t off = 0;
  for (int i = 0; i < dim(); ++i) {
    const std::size_t len = factors_[i]->word_length(R);
    out += factors_[i]->trace_word_1d(w.substr(off, len), R, gamma.coords[i], r);
    off += len;
  }
  return out;
}

std::int64_t System::odometer_modulus(int digits) const {
  std::int64_t m = 1;
  for (int i = 0; i < digits; ++i) {
    const std::int64_t b = bases_[i % bases_.size()];
    if (m > (std::int64_t(1) << 61) / b) throw std::overflow_error("odometer radius too large");
    m *= b;
  }
  return m;
}

std::int64_t System::odometer_value(const Word& w) const {
  std::int64_t v = 0, place = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v += static_cast<std::int64_t>(static_cast<unsigned char>(w[i])) * place;
    place *= bases_[i % bases_.size()];
  }
  return v;
}

Word System::odometer_word(std::int64_t v, int digits) const {
  Word w(static_cast<std::size_t>(digits), 0);
  for (int i = 0; i < digits; ++i) {
    const std::int64_t b = bases_[i % bases_.size()];
    w[i] = static_cast<char>(v % b);
    v /= b;
  }
  return w;
}

double System::word_measure(const Word& w, int radius) const {
  switch (kind_) {
    case SystemKind::Odometer:
      return 1.0 / static_cast<double>(odometer_modulus(radius + 1));
    case SystemKind::Cycle:
      return 1.0 / static_cast<double>(cycle_n_);
    case SystemKind::Substitution: {
      const auto& freq = substitution_frequencies(radius);
      return freq[atom_index(w, radius)];
    }
    case SystemKind::Product: {
      double m = 1.0;
      std::size_t off = 0;
      for (auto& f : factors_) {
        const std::size_t len = f->word_length(radius);
        m *= f->word_measure(w.substr(off, len), radius);
        off += len;
      }
      return m;
    }
  }
  return 0.0;
}

Rational System::word_measure_rational(const Word& w, int radius) const {
  switch (kind_) {
    case SystemKind::Odometer:
      return Rational(1, odometer_modulus(radius + 1));
    case SystemKind::Cycle:
      return Rational(1, cycle_n_);
    case SystemKind::Substitution:
      throw std::invalid_argument("substitution frequencies are not rational");
    case SystemKind::Product: {
      Rational m(1);
      std::size_t off = 0;
      for (auto& f : factors_) {
        const std::size_t len = f->word_length(radius);
        m = m * f->word_measure_rational(w.substr(off, len), radius);
        off += len;
      }
      return m;
    }
  }
  return Rational(0);
}

std::string System::substitution_power(int k) const {
  if (kind_ != SystemKind::Substitution) throw std::logic_error("substitution_power on non-substitution");
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = power_cache_.find(k);
    if (it != power_cache_.end()) return it->second;
  }
  std::string w(1, 0);
  for (int i = 0; i < k; ++i) {
    std::string nw;
    nw.reserve(w.size() * 2);
    for (char s : w) nw += images_[static_cast<int>(s)];
    w = std::move(nw);
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  return power_cache_.emplace(k, std::move(w)).first->second;
}

int System::stabilized_power(std::size_t word_len) const {
  if (kind_ != SystemKind::Substitution) throw std::logic_error("stabilized_power on non-substitution");
  // Iterate sigma^k(letter) for every letter; stop once the set of
  // word_len-factors agrees across two successive powers. Primitivity
  // guarantees stabilization.
  std::vector<std::string> cur;
  for (std::size_t li = 0; li < letters_.size(); ++li) cur.emplace_back(1, static_cast<char>(li));
  std::set<std::uint64_t> prev_hashes;
  int k = 0;
  for (;;) {
    ++k;
    for (auto& w : cur) {
      std::string nw;
      nw.reserve(w.size() * 2);
      for (char s : w) nw += images_[static_cast<int>(s)];
      w = std::move(nw);
    }
    std::size_t min_len = SIZE_MAX;
    for (auto& w : cur) min_len = std::min(min_len, w.size());
    std::set<std::uint64_t> hashes;
    if (min_len >= word_len) {
      for (auto& w : cur) {
        RollingHash rh(w);
        for (std::size_t i = 0; i + word_len <= w.size(); ++i)
          hashes.insert(rh.window(i, word_len));
      }
      if (!prev_hashes.empty() && hashes == prev_hashes) return k;
      prev_hashes = std::move(hashes);
    }
    if (k > 200) throw std::runtime_error("substitution factor set failed to stabilize");
  }
}

int System::alphabet_size() const {
  switch (kind_) {
    case SystemKind::Odometer: return *std::max_element(bases_.begin(), bases_.end());
    case SystemKind::Cycle: return cycle_n_;
    case SystemKind::Substitution: return static_cast<int>(letters_.size());
    default: throw std::logic_error("alphabet_size on product");
  }
}

const std::vector<double>& System::substitution_frequencies(int radius) const {
  {
    std::unique_lock<std::mutex> lk(cache_mu_);
    auto it = freq_cache_.find(radius);
    if (it != freq_cache_.end()) return it->second;
  }
  const std::vector<Word>& states = admissible(radius);
  const int len = word_length(radius);
  const std::size_t n = states.size();
  // Incidence counts of the induced substitution on words: the image of a
  // word w lists the len-blocks of sigma(w) rooted in sigma(w[0]).
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    std::string img;
    for (char s : states[j]) img += images_[static_cast<int>(s)];
    const std::size_t head = images_[static_cast<int>(states[j][0])].size();
    for (std::size_t p = 0; p < head; ++p) {
      if (p + len > img.size()) throw std::logic_error("induced substitution block out of range");
      const Word block = img.substr(p, static_cast<std::size_t>(len));
      auto bit = std::lower_bound(states.begin(), states.end(), block);
      if (bit == states.end() || *bit != block)
        throw std::logic_error("induced substitution produced inadmissible block");
      m[static_cast<std::size_t>(bit - states.begin())][j] += 1.0;
    }
  }
  // Perron vector by power iteration; the word frequencies are its
  // l1-normalization.
  std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
  for (int iter = 0; iter < 2000; ++iter) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * v[j];
      w[i] = s;
      norm += s;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= norm;
      delta = std::max(delta, std::fabs(w[i] - v[i]));
    }
    v = w;
    if (delta < 1e-16) break;
  }
  std::unique_lock<std::mutex> lk(cache_mu_);
  return freq_cache_.emplace(radius, std::move(v)).first->second;
}

std::string System::display(const Word& w) const {
  std::string out;
  if (kind_ == SystemKind::Product) {
    std::size_t off = 0;
    // radius recovered from total length is ambiguous; factor segments are
    // resolved by trying radii until lengths match.
    for (int radius = 0; radius < 1 << 16; ++radius) {
      std::size_t total = 0;
      for (auto& f : factors_) total += f->word_length(radius);
      if (total == w.size()) {
        for (int i = 0; i < dim(); ++i) {
          const std::size_t len = factors_[i]->word_length(radius);
          if (i) out += "|";
          out += factors_[i]->display(w.substr(off, len));
          off += len;
        }
        return out;
      }
      if (total > w.size()) break;
    }
    throw std::invalid_argument("product word has no consistent radius");
  }
  for (char s : w)
    out += kind_ == SystemKind::Substitution ? letters_[static_cast<int>(s)]
                                             : display_symbol(static_cast<unsigned char>(s));
  return out;
}

Word System::from_display(const std::string& s, int radius) const {
  Word w;
  if (kind_ == SystemKind::Product) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == '|') { parts.push_back(cur); cur.clear(); }
      else cur += c;
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != dim())
      throw std::invalid_argument("product word needs one segment per factor");
    for (int i = 0; i < dim(); ++i) w += factors_[i]->from_display(parts[i], radius);
  } else if (kind_ == SystemKind::Substitution) {
    for (char c : s) {
      auto it = std::find(letters_.begin(), letters_.end(), c);
      if (it == letters_.end()) throw std::invalid_argument(std::string("unknown letter '") + c + "'");
      w.push_back(static_cast<char>(it - letters_.begin()));
    }
  } else {
    for (char c : s) w.push_back(static_cast<char>(symbol_value(c)));
  }
  if (static_cast<int>(w.size()) != word_length(radius))
    throw std::invalid_argument("word length does not match radius");
  if (!is_admissible(w, radius)) throw std::invalid_argument("word not admissible: " + s);
  return w;
}

}  // namespace cantor
