#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cantor/measure.hpp"
#include "cantor/window.hpp"

using namespace cantor;

namespace {
SystemPtr fib() { return System::substitution({{"a", "ab"}, {"b", "a"}}); }
}

TEST_CASE("exact measures: odometer") {
  auto s = System::odometer({2});
  auto mu = InvariantMeasure::exact(s);
  CHECK(mu(Clopen::cylinder(s, "0", 0)) == 0.5);
  CHECK(mu(Clopen::empty(s)) == 0.0);
  CHECK(mu(Clopen::full(s, 3)) == 1.0);
  CHECK(mu.rational(Clopen::cylinder(s, "0110", 3)) == Rational(1, 16));
}

TEST_CASE("exact measures: fibonacci golden ratio") {
  auto s = fib();
  auto mu = InvariantMeasure::exact(s);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(mu(Clopen::cylinder(s, "a", 0)) == doctest::Approx(golden).epsilon(1e-12));
  CHECK(mu(Clopen::cylinder(s, "b", 0)) == doctest::Approx(1 - golden).epsilon(1e-12));
}

TEST_CASE("measure additivity") {
  std::uint64_t state = 5;
  for (auto s : {System::odometer({2, 3}), fib()}) {
    auto mu = InvariantMeasure::exact(s);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Word> wa, wb;
      for (const auto& w : s->admissible(2)) {
        if (splitmix64(state) & 1) wa.push_back(w);
        if (splitmix64(state) & 1) wb.push_back(w);
      }
      auto A = Clopen::from_words(s, 2, wa), B = Clopen::from_words(s, 2, wb);
      const double lhs = mu(set_union(A, B)) + mu(set_intersect(A, B));
      const double rhs = mu(A) + mu(B);
      if (s->kind() == SystemKind::Odometer)
        CHECK(mu.rational(set_union(A, B)) + mu.rational(set_intersect(A, B)) ==
              mu.rational(A) + mu.rational(B));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("translation invariance of exact measure") {
  std::uint64_t state = 17;
  for (auto s : {System::odometer({2}), fib(), System::cycle(6)}) {
    auto mu = InvariantMeasure::exact(s);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Word> wa;
      for (const auto& w : s->admissible(2))
        if (splitmix64(state) & 1) wa.push_back(w);
      auto A = Clopen::from_words(s, 2, wa);
      for (std::int64_t g = -8; g <= 8; ++g) {
        const double m0 = mu(A), m1 = mu(A.translated(GroupElement::z(g)));
        if (s->kind() == SystemKind::Substitution)
          CHECK(m0 == doctest::Approx(m1).epsilon(1e-12));
        else
          CHECK(m0 == m1);
      }
    }
  }
}

TEST_CASE("windows: cycle periodicity") {
  auto s = System::cycle(4);
  auto w = OrbitWindow::generate(s, 8, 0);
  for (int i = 0; i < 8; ++i) CHECK(w.symbol(i) == w.symbol(i % 4));
  CHECK(w.symbol(0) == '0');
  CHECK(w.symbol(1) == '1');
}

TEST_CASE("windows: odometer first digits from zero") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 4, 0);
  CHECK(w.symbol(0) == '0');
  CHECK(w.symbol(1) == '1');
  CHECK(w.symbol(2) == '0');
  CHECK(w.symbol(3) == '1');
}

TEST_CASE("windows: membership always resolves") {
  auto s = fib();
  auto w = OrbitWindow::generate(s, 100, 3);
  auto E = Clopen::cylinder(s, "a", 0);
  auto Ec = E.complement();
  for (std::int64_t i = w.valid_lo(0); i < w.valid_hi(0); ++i)
    CHECK((w.in_clopen(E, i) || w.in_clopen(Ec, i)));
  CHECK_THROWS(w.atom(0, 5) == w.atom(0, 5));  // outside valid range
}

TEST_CASE("empirical measure matches exact within 1e-2") {
  for (auto s : {System::odometer({2}), fib()}) {
    auto exact = InvariantMeasure::exact(s);
    auto emp = InvariantMeasure::empirical(s, 100000, 11);
    for (int r = 0; r <= 3; ++r) {
      for (const auto& word : s->admissible(r)) {
        auto E = Clopen::from_words(s, r, {word});
        CHECK(std::fabs(exact(E) - emp(E)) < 1e-2);
      }
    }
  }
}

TEST_CASE("ocap: trivial sets") {
  auto s = System::odometer({2});
  CHECK(estimate_ocap(s, Clopen::empty(s), 100, 1, 0).value == 0.0);
  CHECK(estimate_ocap(s, Clopen::full(s), 100, 1, 0).value == 1.0);
  CHECK_THROWS(estimate_ocap(s, Clopen::full(s), 100, 0, 0));
  CHECK_THROWS(estimate_ocap(s, Clopen::full(s), 0, 1, 0));
}

TEST_CASE("ocap converges to measure for uniquely ergodic systems") {
  auto s = fib();
  auto E = Clopen::cylinder(s, "b", 0);
  const double target = 1.0 - (std::sqrt(5.0) - 1.0) / 2.0;
  double prev = 1.0;
  for (std::int64_t n : {100, 1000, 10000}) {
    auto est = estimate_ocap(s, E, n, 4, 0);
    CHECK(est.exhaustive);
    CHECK(est.value >= target - 1e-9);  // sup over configurations dominates the mean
    if (n == 10000) CHECK(std::fabs(est.value - target) < 1e-2);
    CHECK(est.value <= prev + 1e-9);
    prev = est.value;
  }
}

TEST_CASE("ocap exact for odometer cylinders") {
  auto s = System::odometer({2});
  auto E = Clopen::cylinder(s, "00", 1);
  auto est = estimate_ocap(s, E, 400, 1, 0);
  CHECK(est.exhaustive);
  CHECK(est.value == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("ocap on a product box") {
  auto p = System::product({System::odometer({2}), System::odometer({2})});
  auto E = Clopen::from_words(p, 0, {p->from_display("0|0", 0)});
  auto est = estimate_ocap(p, E, 4, 1, 0);
  CHECK(est.exhaustive);
  CHECK(est.value == doctest::Approx(0.25).epsilon(1e-12));
}
