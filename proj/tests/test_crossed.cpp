#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cantor/ay_model.hpp"
#include "cantor/partition_unity.hpp"
#include "cantor/tower_algebra.hpp"

using namespace cantor;

namespace {

SystemPtr fib() { return System::substitution({{"a", "ab"}, {"b", "a"}}); }

LcReal random_dyadic(const SystemPtr& s, int radius, std::uint64_t& state) {
  std::vector<double> v;
  for (std::size_t i = 0; i < s->admissible(radius).size(); ++i)
    v.push_back(static_cast<double>(static_cast<int>(splitmix64(state) % 17) - 8) / 8.0);
  return LcReal::from_values(s, radius, std::move(v));
}

CrossedElement random_element(const SystemPtr& s, int max_shift, std::uint64_t& state) {
  CrossedElement a(s);
  for (std::int64_t g = -max_shift; g <= max_shift; ++g) {
    if (splitmix64(state) % 3 == 0) continue;
    a.set_coefficient(GroupElement::z(g), random_dyadic(s, 1, state));
  }
  return a;
}

}  // namespace

TEST_CASE("covariance relations") {
  auto s = System::odometer({2});
  const auto u1 = CrossedElement::unitary(s, GroupElement::z(1));
  const auto um1 = CrossedElement::unitary(s, GroupElement::z(-1));
  CHECK(u1 * um1 == CrossedElement::one(s));
  CHECK(um1 * u1 == CrossedElement::one(s));
  // u f u* = f o sigma
  const LcReal f = LcReal::indicator(Clopen::cylinder(s, "01", 1));
  const CrossedElement lhs = u1 * CrossedElement::function(f) * um1;
  CHECK(lhs == CrossedElement::function(f.composed(GroupElement::z(1))));
}

TEST_CASE("algebra axioms on random triples, exact dyadic arithmetic") {
  std::uint64_t state = 7;
  for (auto s : {System::odometer({2}), fib()}) {
    for (int trial = 0; trial < 25; ++trial) {
      const CrossedElement a = random_element(s, 3, state);
      const CrossedElement b = random_element(s, 3, state);
      const CrossedElement c = random_element(s, 3, state);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a + b).adjoint() == a.adjoint() + b.adjoint());
      CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
      CHECK(a.adjoint().adjoint() == a);
    }
  }
}

TEST_CASE("conditional expectation") {
  auto s = System::odometer({2});
  std::uint64_t state = 11;
  CHECK(CrossedElement::unitary(s, GroupElement::z(1)).conditional_expectation().sup_norm() == 0.0);
  const LcReal f = random_dyadic(s, 2, state);
  CHECK(CrossedElement::function(f).conditional_expectation() == f);
  // E(u_1 + 2 + u_-1) = 2
  const CrossedElement mix = CrossedElement::unitary(s, GroupElement::z(1)) +
                             2.0 * CrossedElement::one(s) +
                             CrossedElement::unitary(s, GroupElement::z(-1));
  CHECK(mix.conditional_expectation() == LcReal::constant(s, 2.0));
  // E(f a f') = f E(a) f' for f, f' in C(X)
  const CrossedElement a = random_element(s, 2, state);
  const LcReal f2 = random_dyadic(s, 1, state);
  const CrossedElement faf = CrossedElement::function(f) * a * CrossedElement::function(f2);
  CHECK(faf.conditional_expectation() == f * a.conditional_expectation() * f2);
}

TEST_CASE("represent: diagonal and shift norms") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 256, 0);
  std::uint64_t state = 3;
  const LcReal f = random_dyadic(s, 2, state);
  auto nf = window_norm(CrossedElement::function(f), w);
  CHECK(nf.value == doctest::Approx(f.sup_norm()).epsilon(1e-12));
  auto nu = window_norm(CrossedElement::unitary(s, GroupElement::z(1)), w);
  CHECK(nu.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nu.value >= 1.0 - 2.0 / 256);
}

TEST_CASE("represent: u_1 + u_-1 has norm 2 cos(pi/(L+1))") {
  auto s = System::odometer({2});
  const CrossedElement a = CrossedElement::unitary(s, GroupElement::z(1)) +
                           CrossedElement::unitary(s, GroupElement::z(-1));
  // dense path: exact eigensolve
  for (std::int64_t len : {64, 256}) {
    auto w = OrbitWindow::generate(s, len, 0);
    const double expected = 2.0 * std::cos(M_PI / static_cast<double>(len + 1));
    auto n = window_norm(a, w);
    CHECK(n.dense);
    CHECK(n.value == doctest::Approx(expected).epsilon(1e-9));
  }
  // iterative path: the top of the spectrum is nearly degenerate, so the
  // seeded power iteration reaches its tolerance slightly below the true
  // value; it must still approach 2 from below.
  auto w = OrbitWindow::generate(s, 2048, 0);
  auto n = window_norm(a, w);
  CHECK_FALSE(n.dense);
  CHECK(n.value <= 2.0 + 1e-12);
  CHECK(n.value >= 2.0 * std::cos(M_PI / 2049.0) - 2e-4);
}

TEST_CASE("representation fidelity: interior compression is exactly multiplicative") {
  std::uint64_t state = 17;
  auto s = fib();
  auto w = OrbitWindow::generate(s, 512, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const CrossedElement a = random_element(s, 3, state);
    const CrossedElement b = random_element(s, 3, state);
    const CrossedElement ab = a * b;
    const RegularRepMatrix ma = represent(a, w);
    const RegularRepMatrix mb = represent(b, w);
    const RegularRepMatrix mab = represent(ab, w);
    const std::int64_t margin = 16;
    for (std::int64_t row = margin; row < w.length() - margin; row += 7)
      for (std::int64_t col = row - 6; col <= row + 6; ++col) {
        if (col < margin || col >= w.length() - margin) continue;
        double prod = 0.0;
        for (std::int64_t k = row - 3; k <= row + 3; ++k)
          prod += ma.entry(row, k) * mb.entry(k, col);
        CHECK(mab.entry(row, col) == doctest::Approx(prod).epsilon(1e-12));
      }
  }
}

TEST_CASE("small domain element: 2 + u + u*") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 128, 0);
  const CrossedElement a = 2.0 * CrossedElement::one(s) +
                           CrossedElement::unitary(s, GroupElement::z(1)) +
                           CrossedElement::unitary(s, GroupElement::z(-1));
  auto res = small_domain_element(a, w, 0.1);
  CHECK(res.pap_minus_p2 == 0.0);
  CHECK(res.min_eig >= -1e-9);
  CHECK_FALSE(res.degenerate);
  CHECK(res.h.max_value() == doctest::Approx(0.8).epsilon(1e-12));
  const Clopen c = res.p_cylinder;
  CHECK(c.disjoint_from(c.translated(GroupElement::z(1))));
  CHECK(c.disjoint_from(c.translated(GroupElement::z(-1))));
}

TEST_CASE("small domain element: plain positive function") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 64, 0);
  std::vector<double> vals{0.25, 1.0};  // 0.25 on [0], 1 on [1]
  const CrossedElement a =
      CrossedElement::function(LcReal::from_values(s, 0, std::move(vals)));
  auto res = small_domain_element(a, w, 0.05);
  CHECK(res.p_cylinder == Clopen::cylinder(s, "1", 0));
  CHECK(res.pap_minus_p2 == 0.0);
}

TEST_CASE("small domain element: degenerate eps flagged") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 64, 0);
  auto res = small_domain_element(2.0 * CrossedElement::one(s), w, 0.6);
  CHECK(res.degenerate);
  CHECK(res.h.sup_norm() == 0.0);
}

TEST_CASE("small domain element rejects non-positive input") {
  auto s = System::odometer({2});
  auto w = OrbitWindow::generate(s, 64, 0);
  CHECK_THROWS(small_domain_element(CrossedElement::unitary(s, GroupElement::z(1)) +
                                        CrossedElement::unitary(s, GroupElement::z(-1)),
                                    w, 0.1));
  CHECK_THROWS(small_domain_element(CrossedElement::one(s) -
                                        2.0 * CrossedElement::unitary(s, GroupElement::z(1)) -
                                        2.0 * CrossedElement::unitary(s, GroupElement::z(-1)),
                                    w, 0.1));
}

TEST_CASE("partition of unity: telescoping formulas, rational-exact") {
  auto s = System::odometer({2});
  LcRational g1 = LcRational::from_values(s, 0, {Rational(1), Rational(1, 3)});
  LcRational g2 = LcRational::from_values(s, 0, {Rational(0), Rational(1)});
  auto res = partition_of_unity<Rational>({g1, g2}, Clopen::full(s, 0));
  REQUIRE(res.parts.size() == 2);
  CHECK(res.sum_is_one_on_target);
  CHECK(res.parts[0] == g1);
  CHECK(res.parts[1] == (LcRational::constant(s, Rational(1)) - g1) * g2);
  LcRational total = res.parts[0] + res.parts[1];
  LcRational prod = (LcRational::constant(s, Rational(1)) - g1) *
                    (LcRational::constant(s, Rational(1)) - g2);
  CHECK(total == LcRational::constant(s, Rational(1)) - prod);
}

TEST_CASE("partition of unity: single full function and failure cases") {
  auto s = System::odometer({2});
  LcRational one = LcRational::constant(s, Rational(1));
  auto res = partition_of_unity<Rational>({one}, Clopen::full(s, 0));
  CHECK(res.parts[0] == one);
  CHECK(res.sum_is_one_on_target);
  LcRational only0 = LcRational::from_values(s, 0, {Rational(1), Rational(0)});
  CHECK_THROWS_WITH_AS(partition_of_unity<Rational>({only0}, Clopen::full(s, 0)),
                       doctest::Contains("misses cell"), std::invalid_argument);
  LcRational bad = LcRational::from_values(s, 0, {Rational(2), Rational(0)});
  CHECK_THROWS(partition_of_unity<Rational>({bad}, Clopen::full(s, 0)));
}

TEST_CASE("extend partition: W covers the deficit") {
  auto s = System::odometer({2});
  LcRational phi = LcRational::from_values(s, 0, {Rational(1), Rational(0)});
  LcRational g1 = LcRational::from_values(s, 0, {Rational(0), Rational(1)});
  auto res = extend_partition<Rational>({phi}, {g1});
  REQUIRE(res.h.size() == 1);
  CHECK(res.full_sum_is_one);
  CHECK(res.h[0] == (LcRational::constant(s, Rational(1)) - phi) * g1);
  auto res2 = extend_partition<Rational>({LcRational::constant(s, Rational(1))},
                                         std::vector<LcRational>{});
  CHECK(res2.full_sum_is_one);
  LcRational half = LcRational::from_values(s, 0, {Rational(1, 2), Rational(1)});
  CHECK_THROWS_WITH_AS(extend_partition<Rational>({half}, std::vector<LcRational>{}),
                       doctest::Contains("outside every core"), std::invalid_argument);
}

TEST_CASE("tower algebra: height-2 odometer tower relations are exact") {
  auto s = System::odometer({2});
  auto td = kakutani_rokhlin(s, Clopen::cylinder(s, "0", 0));
  auto w = OrbitWindow::generate(s, 4096, 0);
  std::vector<CrossedElement> gens{
      CrossedElement::indicator(Clopen::cylinder(s, "0", 0)),
      CrossedElement::function(0.5 * LcReal::indicator(Clopen::cylinder(s, "00", 1)))};
  auto rep = tower_algebra_check(td, gens, w);
  CHECK(rep.ok());
  CHECK(rep.orthogonality_checks > 0);
  CHECK(rep.worst_matrix_unit_error <= 1e-9);
}

TEST_CASE("tower algebra: single-level tower passes trivially") {
  auto s = System::cycle(1);
  auto td = kakutani_rokhlin(s, Clopen::full(s, 0));
  auto w = OrbitWindow::generate(s, 64, 0);
  auto rep = tower_algebra_check(td, {CrossedElement::one(s)}, w);
  CHECK(rep.ok());
}

TEST_CASE("tower algebra: generator straddling levels is reported") {
  auto s = System::odometer({2});
  auto td = kakutani_rokhlin(s, Clopen::cylinder(s, "00", 1));
  auto w = OrbitWindow::generate(s, 1024, 0);
  // [0] covers the base [00] and the level-2 cell [01]: escapes the bases
  std::vector<CrossedElement> gens{
      CrossedElement::indicator(Clopen::cylinder(s, "0", 0))};
  auto rep = tower_algebra_check(td, gens, w);
  CHECK_FALSE(rep.support_violations.empty());
  CHECK_FALSE(rep.ok());
}

TEST_CASE("ay model: base-2 odometer, Y = [0]") {
  auto s = System::odometer({2});
  auto m = make_ay_model(s, Clopen::cylinder(s, "0", 0), 1);
  REQUIRE(m.blocks.size() == 1);
  CHECK(m.blocks[0].height == 2);
  // chi_[0] along the base-anchored column {x, sx} of x in Z_1 = [0]:
  // diag(1, 0) (the classical backward-shift picture lists diag(0, 1)).
  const CrossedElement f = CrossedElement::indicator(Clopen::cylinder(s, "0", 0));
  auto mats = ay_map(m, f);
  REQUIRE(!mats[0].empty());
  for (const auto& mat : mats[0]) {
    CHECK(mat(0, 0) == 1.0);
    CHECK(mat(1, 1) == 0.0);
    CHECK(mat(0, 1) == 0.0);
    CHECK(mat(1, 0) == 0.0);
  }
}

TEST_CASE("ay model: ug with g = 0 is the zero matrix") {
  auto s = System::odometer({2});
  auto m = make_ay_model(s, Clopen::cylinder(s, "0", 0));
  const CrossedElement ug =
      CrossedElement::unitary(s, GroupElement::z(1)) * CrossedElement::function(LcReal::constant(s, 0.0));
  auto mats = ay_map(m, ug);
  for (const auto& blk : mats)
    for (const auto& mat : blk) CHECK(mat.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ay model: membership conditions enforced") {
  auto s = System::odometer({2});
  auto m = make_ay_model(s, Clopen::cylinder(s, "0", 0));
  CHECK_FALSE(in_ay_subalgebra(m, CrossedElement::unitary(s, GroupElement::z(1))));
  CHECK_THROWS(ay_map(m, CrossedElement::unitary(s, GroupElement::z(1))));
  const CrossedElement ug = CrossedElement::unitary(s, GroupElement::z(1)) *
                            CrossedElement::indicator(Clopen::cylinder(s, "1", 0));
  CHECK(in_ay_subalgebra(m, ug));
}

TEST_CASE("ay model is a *-homomorphism on random words") {
  std::uint64_t state = 2718;
  auto s = System::odometer({2});
  const Clopen y = Clopen::cylinder(s, "0", 0);
  auto m = make_ay_model(s, y, 2);
  const LcReal mask = LcReal::indicator(y.complement());
  for (int trial = 0; trial < 10; ++trial) {
    const CrossedElement f1 = CrossedElement::function(random_dyadic(s, 1, state));
    const CrossedElement f2 = CrossedElement::function(random_dyadic(s, 2, state));
    const CrossedElement ug1 = CrossedElement::unitary(s, GroupElement::z(1)) *
                               CrossedElement::function(random_dyadic(s, 1, state) * mask);
    const CrossedElement ug2 = CrossedElement::unitary(s, GroupElement::z(1)) *
                               CrossedElement::function(random_dyadic(s, 2, state) * mask);
    const CrossedElement words[] = {f1, ug1, ug1.adjoint(), f1 * ug2, ug1 * f2,
                                    ug1.adjoint() * ug2};
    for (const auto& a : words)
      for (const auto& b : words) {
        REQUIRE(in_ay_subalgebra(m, a));
        REQUIRE(in_ay_subalgebra(m, b));
        const CrossedElement ab = a * b;
        REQUIRE(in_ay_subalgebra(m, ab));
        auto ma = ay_map(m, a);
        auto mb = ay_map(m, b);
        auto mab = ay_map(m, ab);
        for (std::size_t blk = 0; blk < mab.size(); ++blk)
          for (std::size_t at = 0; at < mab[blk].size(); ++at) {
            const Eigen::MatrixXd prod = ma[blk][at] * mb[blk][at];
            CHECK((mab[blk][at] - prod).cwiseAbs().maxCoeff() <= 1e-12);
          }
      }
  }
}

TEST_CASE("ay model: (ug)*(ug) matches the model product exactly") {
  auto s = System::odometer({2});
  const Clopen y = Clopen::cylinder(s, "0", 0);
  auto m = make_ay_model(s, y, 1);
  const CrossedElement ug = CrossedElement::unitary(s, GroupElement::z(1)) *
                            CrossedElement::indicator(y.complement());
  const CrossedElement prod = ug.adjoint() * ug;
  auto lhs = ay_map(m, prod);
  auto mats = ay_map(m, ug);
  for (std::size_t blk = 0; blk < lhs.size(); ++blk)
    for (std::size_t at = 0; at < lhs[blk].size(); ++at) {
      const Eigen::MatrixXd rhs = mats[blk][at].transpose() * mats[blk][at];
      CHECK((lhs[blk][at] - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}
