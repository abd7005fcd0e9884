#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/clopen.hpp"
#include "cantor/window.hpp"

using namespace cantor;

namespace {

SystemPtr fib() { return System::substitution({{"a", "ab"}, {"b", "a"}}); }

Clopen random_clopen(const SystemPtr& s, int radius, std::uint64_t& state) {
  std::vector<Word> words;
  for (const auto& w : s->admissible(radius))
    if (splitmix64(state) & 1) words.push_back(w);
  return Clopen::from_words(s, radius, std::move(words));
}

}  // namespace

TEST_CASE("basic identities") {
  auto s = System::odometer({2});
  auto E = Clopen::cylinder(s, "0", 0);
  auto empty = Clopen::empty(s);
  CHECK(set_union(E, empty) == E);
  CHECK(set_intersect(E, E.complement()).is_empty());
  CHECK(set_union(E, E.complement()).is_full());
}

TEST_CASE("cylinder refinement: [0] meets [00 at deeper radius]") {
  auto s = System::odometer({2});
  auto e0 = Clopen::cylinder(s, "0", 0);
  auto e00 = Clopen::cylinder(s, "00", 1);
  CHECK(set_intersect(e0, e00) == e00);
  CHECK(e00.subset_of(e0));
}

TEST_CASE("translate: odometer carry") {
  auto s = System::odometer({2});
  auto e0 = Clopen::cylinder(s, "0", 0);
  CHECK(e0.translated(GroupElement::z(1)) == Clopen::cylinder(s, "1", 0));
  CHECK(Clopen::empty(s).translated(GroupElement::z(1)).is_empty());
  CHECK(Clopen::full(s).translated(GroupElement::z(5)).is_full());
}

TEST_CASE("translate round trip") {
  std::uint64_t state = 7;
  for (auto s : {System::odometer({2, 3}), fib(), System::cycle(5)}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto E = random_clopen(s, 2, state);
      for (std::int64_t g : {1, -2, 3}) {
        auto back = E.translated(GroupElement::z(g)).translated(GroupElement::z(-g));
        CHECK(back == E);
      }
    }
  }
}

TEST_CASE("lattice identities on random clopens") {
  std::uint64_t state = 99;
  for (auto s : {System::odometer({2}), fib()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int r = static_cast<int>(splitmix64(state) % 4);
      auto A = random_clopen(s, r, state);
      auto B = random_clopen(s, static_cast<int>(splitmix64(state) % 4), state);
      auto C = random_clopen(s, static_cast<int>(splitmix64(state) % 3), state);
      // associativity, distributivity, De Morgan
      CHECK(set_union(A, set_union(B, C)) == set_union(set_union(A, B), C));
      CHECK(set_intersect(A, set_intersect(B, C)) == set_intersect(set_intersect(A, B), C));
      CHECK(set_intersect(A, set_union(B, C)) ==
            set_union(set_intersect(A, B), set_intersect(A, C)));
      CHECK(set_union(A, B).complement() == set_intersect(A.complement(), B.complement()));
      CHECK(set_intersect(A, B).complement() == set_union(A.complement(), B.complement()));
      CHECK(set_difference(A, B) == set_intersect(A, B.complement()));
    }
  }
}

TEST_CASE("translation distributes over boolean ops") {
  std::uint64_t state = 1234;
  auto s = fib();
  for (int trial = 0; trial < 10; ++trial) {
    auto A = random_clopen(s, 1, state);
    auto B = random_clopen(s, 2, state);
    const GroupElement g = GroupElement::z(static_cast<std::int64_t>(splitmix64(state) % 5) - 2);
    CHECK(set_union(A, B).translated(g) == set_union(A.translated(g), B.translated(g)));
    CHECK(set_intersect(A, B).translated(g) ==
          set_intersect(A.translated(g), B.translated(g)));
  }
}

TEST_CASE("mismatched systems rejected") {
  auto a = Clopen::cylinder(System::odometer({2}), "0", 0);
  auto b = Clopen::cylinder(System::odometer({3}), "0", 0);
  CHECK_THROWS(set_union(a, b));
}

TEST_CASE("product clopens") {
  auto p = System::product({System::odometer({2}), System::cycle(2)});
  auto full = Clopen::full(p, 0);
  CHECK(full.words().size() == 4);
  auto e = Clopen::from_words(p, 0, {p->from_display("0|0", 0)});
  auto moved = e.translated(GroupElement({1, 1}));
  CHECK(moved == Clopen::from_words(p, 0, {p->from_display("1|1", 0)}));
}
