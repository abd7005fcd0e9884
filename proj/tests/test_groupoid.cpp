#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/matrix_model.hpp"
#include "cantor/window.hpp"

using namespace cantor;

namespace {

SystemPtr fib() { return System::substitution({{"a", "ab"}, {"b", "a"}}); }

SmallGroupoid tower_groupoid(const SystemPtr& s, const Clopen& y) {
  return build_groupoid(shape_from_tiling(tiling_from_returns(first_return_analysis(s, y))));
}

// Random locally constant function with dyadic values (multiples of 1/8),
// so products and sums stay exact in double arithmetic.
LcReal random_dyadic(const SystemPtr& s, int radius, std::uint64_t& state) {
  std::vector<double> v;
  for (std::size_t i = 0; i < s->admissible(radius).size(); ++i)
    v.push_back(static_cast<double>(static_cast<int>(splitmix64(state) % 17) - 8) / 8.0);
  return LcReal::from_values(s, radius, std::move(v));
}

// Random element supported on the groupoid: coefficients masked to the
// allowed landing region of each jump.
CrossedElement random_supported(const SmallGroupoid& g, std::uint64_t& state) {
  const SystemPtr& sys = g.system();
  CrossedElement a(sys);
  for (const auto& gamma : g.supp().elements()) {
    if (splitmix64(state) % 3 == 0) continue;
    Clopen allowed = Clopen::empty(sys, g.data_radius());
    for (const auto& p : g.pieces()) {
      const FiniteGroupSet shape = g.shape().cells[p.rep].shape.translated(-p.offset);
      if (shape.contains(gamma)) allowed = set_union(allowed, p.cell);
    }
    a.set_coefficient(gamma, random_dyadic(sys, g.data_radius(), state) *
                                 LcReal::indicator(allowed));
  }
  return a;
}

}  // namespace

TEST_CASE("odometer pair groupoid: orbits are {x, x+1} for x in [0]") {
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "0", 0));
  const Word w0 = s->from_display("0", 0);
  auto orb = orbit(g, w0, 0);
  CHECK(orb.offsets == FiniteGroupSet::interval(0, 1).elements());
  CHECK(orb.points.size() == 2);
  CHECK_FALSE(orb.capped);
  const Word w1 = s->from_display("1", 0);
  auto orb1 = orbit(g, w1, 0);
  CHECK(orb1.offsets == FiniteGroupSet::interval(-1, 0).elements());
}

TEST_CASE("trivial groupoid: orbit is the point itself") {
  auto s = System::cycle(1);
  auto g = tower_groupoid(s, Clopen::full(s, 0));
  auto orb = orbit(g, s->admissible(0)[0], 0);
  CHECK(orb.offsets.size() == 1);
  CHECK(verify_groupoid_axioms(g).ok());
}

TEST_CASE("fibonacci groupoid: orbit sizes match tile lengths") {
  auto s = fib();
  auto g = tower_groupoid(s, Clopen::cylinder(s, "a", 0));
  std::set<std::size_t> sizes;
  const int rbig = g.data_radius() + 2;
  for (const auto& w : s->admissible(rbig)) sizes.insert(g.shape_at(w, rbig).size());
  CHECK(sizes == std::set<std::size_t>{1, 2});
}

TEST_CASE("height-16 tower: orbit is the full column") {
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "0000", 3));
  const Word base = s->from_display("0000", 3);
  auto orb = orbit(g, base, 3);
  CHECK(orb.offsets.size() == 16);
  CHECK(orb.points.size() == 16);
}

TEST_CASE("groupoid axioms hold exhaustively on tower groupoids") {
  auto s2 = System::odometer({2});
  for (int n = 1; n <= 4; ++n) {
    auto g = tower_groupoid(s2, Clopen::cylinder(s2, std::string(n, '0'), n - 1));
    auto rep = verify_groupoid_axioms(g);
    CHECK(rep.ok());
    CHECK(rep.atoms_checked > 0);
  }
  auto f = fib();
  for (const std::string base : {"a", "b"}) {
    auto g = tower_groupoid(f, Clopen::cylinder(f, base, 0));
    CHECK(verify_groupoid_axioms(g).ok());
  }
}

TEST_CASE("tampered piece assignment is caught with witnesses") {
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "00", 1));
  auto bad = g.with_tampered_piece(2, 0, GroupElement::z(1));
  auto rep = verify_groupoid_axioms(bad);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("membership via Y_gamma agrees with the shape route") {
  auto s = fib();
  auto g = tower_groupoid(s, Clopen::cylinder(s, "a", 0));
  for (const auto& gamma : g.supp().elements()) {
    const Clopen y = g.y_gamma(gamma);
    // Omega \ Y_gamma is exactly the landing region of jump gamma
    const int rbig = s->needed_radius(g.data_radius(), gamma);
    for (const auto& w : s->admissible(rbig)) {
      const bool member = g.member(w, rbig, gamma);
      const bool in_shape = g.shape_at(w, rbig).contains(gamma);
      CHECK(member == in_shape);
      const Word moved = s->trace_word(w, rbig, gamma, g.data_radius());
      CHECK(member == !y.contains_word(moved));
    }
  }
}

TEST_CASE("groupoid from a product tiling passes the axioms") {
  auto f1 = System::odometer({2});
  auto f2 = System::cycle(3);
  auto t1 = tiling_from_returns(first_return_analysis(f1, Clopen::cylinder(f1, "0", 0)));
  auto t2 = tiling_from_returns(first_return_analysis(f2, Clopen::from_words(f2, 0, {f2->admissible(0)[0]})));
  auto p = System::product({f1, f2});
  auto g = build_groupoid(shape_from_tiling(product_tiling(p, {t1, t2})));
  CHECK(verify_groupoid_axioms(g).ok());
}

TEST_CASE("pi is a *-homomorphism on groupoid-supported elements") {
  std::uint64_t state = 31;
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "00", 1));
  auto m = build_matrix_model(g, g.data_radius());
  for (int trial = 0; trial < 10; ++trial) {
    const CrossedElement a = random_supported(g, state);
    const CrossedElement b = random_supported(g, state);
    const CrossedElement ab = a * b;
    REQUIRE(supported_on_groupoid(g, ab));
    for (std::size_t blk = 0; blk < m.blocks.size(); ++blk)
      for (const auto& atom : m.blocks[blk].cell_atoms) {
        const Eigen::MatrixXd lhs = pi_block(m, ab, static_cast<int>(blk), atom);
        const Eigen::MatrixXd rhs = pi_block(m, a, static_cast<int>(blk), atom) *
                                    pi_block(m, b, static_cast<int>(blk), atom);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);  // dyadic data: exact
      }
  }
}

TEST_CASE("pi respects adjoints") {
  std::uint64_t state = 77;
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "00", 1));
  auto m = build_matrix_model(g, g.data_radius());
  const CrossedElement a = random_supported(g, state);
  for (std::size_t blk = 0; blk < m.blocks.size(); ++blk)
    for (const auto& atom : m.blocks[blk].cell_atoms) {
      const Eigen::MatrixXd lhs = pi_block(m, a.adjoint(), static_cast<int>(blk), atom);
      const Eigen::MatrixXd rhs =
          pi_block(m, a, static_cast<int>(blk), atom).transpose();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("pi of a function is the diagonal of its orbit values") {
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "00", 1));
  auto m = build_matrix_model(g, 1);
  const LcReal f = LcReal::indicator(Clopen::cylinder(s, "0", 0));
  const CrossedElement cf = CrossedElement::function(f);
  const auto& blk = m.blocks[0];
  const Eigen::MatrixXd mat = pi_block(m, cf, 0, blk.cell_atoms[0]);
  for (int i = 0; i < mat.rows(); ++i)
    for (int j = 0; j < mat.cols(); ++j) {
      if (i != j) CHECK(mat(i, j) == 0.0);
    }
  // identity on the unit space maps to the identity matrix
  const Eigen::MatrixXd one =
      pi_block(m, CrossedElement::one(s), 0, blk.cell_atoms[0]);
  CHECK(one.isIdentity(0.0));
}

TEST_CASE("coefficients reconstruct from the block matrices (injectivity)") {
  std::uint64_t state = 123;
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "00", 1));
  auto m = build_matrix_model(g, g.data_radius());
  const CrossedElement a = random_supported(g, state);
  const int rbig = g.data_radius() + 1;
  for (const auto& w : s->admissible(rbig)) {
    const FiniteGroupSet sx = g.shape_at(w, rbig);
    for (const auto& gamma : sx.elements()) {
      const LcReal* f = a.coefficient(gamma);
      const double direct = f ? f->value_at(s->trace_word(w, rbig, GroupElement::zero(1),
                                                          f->radius()),
                                            f->radius())
                              : 0.0;
      CHECK(reconstruct_coefficient(m, a, w, rbig, gamma) == direct);
    }
  }
}

TEST_CASE("rank formula: matrix rank equals orbit count") {
  std::uint64_t state = 55;
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "0000", 3));
  auto m = build_matrix_model(g, 3);
  // E = [0]: alternating first digit along the height-16 column gives rank 8
  const RankPair rp0 = rank_of_open_set(m, Clopen::cylinder(s, "0", 0), 0,
                                        m.blocks[0].cell_atoms[0]);
  CHECK(rp0.matrix_rank == 8);
  CHECK(rp0.agree());
  // E = X and E = empty
  CHECK(rank_of_open_set(m, Clopen::full(s, 0), 0, m.blocks[0].cell_atoms[0]).matrix_rank == 16);
  CHECK(rank_of_open_set(m, Clopen::empty(s, 0), 0, m.blocks[0].cell_atoms[0]).matrix_rank == 0);
  // random clopens
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Word> words;
    for (const auto& w : s->admissible(3))
      if (splitmix64(state) & 1) words.push_back(w);
    const Clopen e = Clopen::from_words(s, 3, std::move(words));
    for (std::size_t blk = 0; blk < m.blocks.size(); ++blk)
      for (const auto& atom : m.blocks[blk].cell_atoms)
        CHECK(rank_of_open_set(m, e, static_cast<int>(blk), atom).agree());
  }
}

TEST_CASE("orbit partition: cell measure times orbit size sums to one") {
  auto s = fib();
  auto g = tower_groupoid(s, Clopen::cylinder(s, "a", 0));
  auto mu = InvariantMeasure::exact(s);
  double total = 0.0;
  for (const auto& c : g.shape().cells)
    total += mu(c.cell) * static_cast<double>(c.shape.size());
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orbit invariance report") {
  auto s = System::odometer({2});
  auto g = tower_groupoid(s, Clopen::cylinder(s, "0000", 3));
  const auto k = FiniteGroupSet::interval(-1, 1);
  auto rep = orbit_invariance_report(g, k, 2.0 / 16.0 + 1e-9);
  CHECK(rep.worst == 2.0 / 16.0);
  CHECK(rep.pass);
  // boundary exactness: defect == eps must fail the strict test
  CHECK_FALSE(orbit_invariance_report(g, k, 2.0 / 16.0).pass);
  // trivial groupoid fails against any K != {e}
  auto sc = System::cycle(1);
  auto trivial = tower_groupoid(sc, Clopen::full(sc, 0));
  CHECK_FALSE(orbit_invariance_report(trivial, FiniteGroupSet::interval(0, 1), 0.9).pass);
}

TEST_CASE("boundary decomposition: trivial in the clopen pipeline") {
  auto s = fib();
  auto sf = shape_from_tiling(tiling_from_returns(first_return_analysis(s, Clopen::cylinder(s, "a", 0))));
  auto rep = boundary_decomposition_check(sf);
  CHECK(rep.cells_pairwise_disjoint);
  CHECK(rep.all_trivial());
}

TEST_CASE("boundary decomposition: synthetic nested input decomposes") {
  auto s = System::odometer({2});
  auto sf = shape_from_tiling(tiling_from_returns(first_return_analysis(s, Clopen::cylinder(s, "00", 1))));
  // limit point whose shape values split the height-4 shape into 2+2
  BoundaryAdjacency adj;
  adj.rep = 0;
  adj.limit_shapes[GroupElement::z(0)] = FiniteGroupSet::interval(0, 1);
  adj.limit_shapes[GroupElement::z(1)] = FiniteGroupSet::interval(-1, 0);
  adj.limit_shapes[GroupElement::z(2)] = FiniteGroupSet::interval(0, 1);
  adj.limit_shapes[GroupElement::z(3)] = FiniteGroupSet::interval(-1, 0);
  auto rep = boundary_decomposition_check(sf, {adj});
  CHECK_FALSE(rep.all_trivial());
  CHECK(rep.decompositions[0].parts.size() == 2);
}
