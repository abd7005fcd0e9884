#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/group.hpp"
#include "cantor/window.hpp"

using namespace cantor;

TEST_CASE("folner boxes") {
  CHECK(folner_boxes(1, 3) == FiniteGroupSet::interval(0, 2));
  CHECK(folner_boxes(2, 2).size() == 4);
  CHECK(folner_boxes(2, 2).contains(GroupElement({1, 1})));
  CHECK_FALSE(folner_boxes(2, 2).contains(GroupElement({2, 0})));
  CHECK_THROWS(folner_boxes(0, 3));
  CHECK_THROWS(folner_boxes(1, 0));
}

TEST_CASE("invariance defect") {
  const auto F10 = FiniteGroupSet::interval(0, 9);
  const auto K = FiniteGroupSet::interval(-1, 1);
  CHECK(invariance_defect(F10, K) == 0.2);
  CHECK(invariance_defect(FiniteGroupSet::singleton(GroupElement::z(0)),
                          FiniteGroupSet::singleton(GroupElement::z(1))) == 2.0);
  CHECK(invariance_defect(FiniteGroupSet::interval(0, 99), FiniteGroupSet::interval(0, 1)) == 0.01);
  CHECK_THROWS(invariance_defect(FiniteGroupSet(), K));
}

TEST_CASE("defect of folner boxes against {-1,0,1}") {
  const auto K = FiniteGroupSet::interval(-1, 1);
  for (int n : {4, 10, 25})
    CHECK(invariance_defect(folner_boxes(1, n), K) == 2.0 / n);
}

TEST_CASE("interior") {
  const auto F = FiniteGroupSet::interval(0, 9);
  CHECK(interior(F, FiniteGroupSet::interval(0, 1)) == FiniteGroupSet::interval(0, 8));
  CHECK(interior(F, FiniteGroupSet::singleton(GroupElement::z(0))) == F);
  CHECK(interior(F, FiniteGroupSet::interval(-1, 1)) == FiniteGroupSet::interval(1, 8));
}

TEST_CASE("interior inequality |F \\ int_K(F)| <= |K| |FK delta F|") {
  std::uint64_t state = 42;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(splitmix64(state) % 2);
    std::vector<GroupElement> fe, ke;
    const int fn = 1 + static_cast<int>(splitmix64(state) % 20);
    const int kn = 1 + static_cast<int>(splitmix64(state) % 5);
    for (int i = 0; i < fn; ++i) {
      GroupElement g = GroupElement::zero(d);
      for (int a = 0; a < d; ++a) g.coords[a] = static_cast<std::int64_t>(splitmix64(state) % 15) - 7;
      fe.push_back(g);
    }
    for (int i = 0; i < kn; ++i) {
      GroupElement g = GroupElement::zero(d);
      for (int a = 0; a < d; ++a) g.coords[a] = static_cast<std::int64_t>(splitmix64(state) % 5) - 2;
      ke.push_back(g);
    }
    const FiniteGroupSet F(fe), K(ke);
    const auto FK = set_product(F, K);
    const std::size_t sym = set_difference(FK, F).size() + set_difference(F, FK).size();
    const std::size_t lhs = set_difference(F, interior(F, K)).size();
    CHECK(lhs <= K.size() * sym);
  }
}

TEST_CASE("set product and translates") {
  const auto F = FiniteGroupSet::interval(0, 2);
  CHECK(set_product(F, FiniteGroupSet::interval(-1, 1)) == FiniteGroupSet::interval(-1, 3));
  CHECK(F.translated(GroupElement::z(5)) == FiniteGroupSet::interval(5, 7));
  CHECK(F.negated() == FiniteGroupSet::interval(-2, 0));
}
