#include <algorithm>
#include <random>

#include "doctest.h"
#include "klrcalc/cartan.hpp"

using namespace klrcalc;

TEST_CASE("datum validation") {
  CHECK_THROWS_AS(CartanDatum(0, {}), Error);
  CHECK_THROWS_AS(CartanDatum(2, {{0, 0}}), Error);          // loop
  CHECK_THROWS_AS(CartanDatum(2, {{0, 1}, {1, 0}}), Error);  // multi-edge
  CHECK_THROWS_AS(CartanDatum(2, {{0, 2}}), Error);          // out of range
  CHECK_THROWS_AS(CartanDatum(3, {{0, 1}}), Error);          // disconnected
  CHECK_NOTHROW(CartanDatum(1, {}));
  CHECK_NOTHROW(CartanDatum::lineGraph(5));
  CHECK_NOTHROW(CartanDatum::cycleGraph(3));
  CHECK_THROWS_AS(CartanDatum::cycleGraph(2), Error);
}

TEST_CASE("cartan matrix shape") {
  for (const CartanDatum& d :
       {CartanDatum::lineGraph(4), CartanDatum::cycleGraph(5),
        CartanDatum(4, {{0, 1}, {0, 2}, {0, 3}})}) {
    for (int i = 0; i < d.vertexCount(); ++i) {
      CHECK(d.cartan(i, i) == 2);
      for (int j = 0; j < d.vertexCount(); ++j) {
        CHECK(d.cartan(i, j) == d.cartan(j, i));
        if (i != j) CHECK((d.cartan(i, j) == 0 || d.cartan(i, j) == -1));
      }
    }
  }
}

TEST_CASE("structure scalars") {
  CartanDatum d = CartanDatum::lineGraph(3);
  CHECK(d.t(0, 1) == Rational(1));  // default
  d.setT(0, 1, Rational(3, 2));
  CHECK(d.t(0, 1) == Rational(3, 2));
  CHECK(d.t(1, 0) == Rational(1));  // adjacent pair: independent slots
  CHECK_THROWS_AS(d.setT(0, 1, Rational(0)), Error);
  CHECK_THROWS_AS(d.setT(0, 0, Rational(1)), Error);
  // Non-adjacent pair: symmetric, both slots track the latest value.
  d.setT(0, 2, Rational(5));
  CHECK(d.t(2, 0) == Rational(5));
}

TEST_CASE("pairing fixed values") {
  CartanDatum sl2 = CartanDatum::lineGraph(1);
  CHECK(pairing(sl2, Weight{{0}, {1}}, 0) == 2);

  CartanDatum sl3 = CartanDatum::lineGraph(2);
  CHECK(pairing(sl3, Weight{{0, 0}, {1, 0}}, 1) == -1);
  CHECK(pairing(sl3, Weight{{0, 0}, {1, 1}}, 0) == 1);
  CHECK(pairings(sl3, Weight{{3, -1}, {0, 0}}) ==
        std::vector<long long>{3, -1});
}

TEST_CASE("pairing shifts by cartan entries") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long long> small(-5, 5);
  for (const CartanDatum& d :
       {CartanDatum::lineGraph(3), CartanDatum::cycleGraph(4)}) {
    const int n = d.vertexCount();
    for (int trial = 0; trial < 50; ++trial) {
      Weight w;
      for (int i = 0; i < n; ++i) {
        w.basePairings.push_back(small(rng));
        w.coords.push_back(small(rng));
      }
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          CHECK(pairing(d, w.shifted(j, 1), i) - pairing(d, w, i) ==
                d.cartan(j, i));
    }
  }
}

TEST_CASE("form on root-lattice vectors") {
  CartanDatum sl3 = CartanDatum::lineGraph(2);
  CHECK(formOnRoots(sl3, {Rational(1), Rational(0)}, 0) == Rational(2));
  CHECK(formOnRoots(sl3, {Rational(1), Rational(2)}, 0) == Rational(0));

  CartanDatum line4 = CartanDatum::lineGraph(4);
  // alpha_j against alpha_i with <j,i> = 0
  CHECK(formOnRoots(line4, {Rational(0), Rational(0), Rational(0), Rational(1)}, 0)
        == Rational(0));
}

TEST_CASE("form vanishes on the radical of affine cycles") {
  // For a cycle graph the all-ones vector spans the radical of C.
  for (int n = 3; n <= 6; ++n) {
    CartanDatum d = CartanDatum::cycleGraph(n);
    std::vector<Rational> ones(static_cast<size_t>(n), Rational(1));
    for (int i = 0; i < n; ++i) CHECK(formOnRoots(d, ones, i) == Rational(0));
    // Scaled radical vectors vanish too.
    std::vector<Rational> scaled(static_cast<size_t>(n), Rational(-7, 3));
    for (int i = 0; i < n; ++i) CHECK(formOnRoots(d, scaled, i) == Rational(0));
  }
}

TEST_CASE("support membership is total on the coset") {
  Support s({0}, {{0}, {1}});
  CHECK(s.contains(Weight{{0}, {1}}));
  CHECK(!s.contains(Weight{{0}, {2}}));
  CHECK(!s.contains(Weight{{1}, {1}}));  // different coset: never supported
  CHECK(s.size() == 2);
  CHECK_THROWS_AS(Support({0, 0}, {{1}}), Error);  // length mismatch
}

TEST_CASE("conditions hold on the three-point sl_2 support") {
  CartanDatum sl2 = CartanDatum::lineGraph(1);
  Support s({-2}, {{0}, {1}, {2}});  // pairings -2, 0, 2
  ConditionReport r = checkConditions(sl2, s);
  CHECK(r.allHold());
  // alpha_0 vanishing line is reported even though it holds trivially.
  CHECK(std::any_of(r.entries.begin(), r.entries.end(), [](const auto& e) {
    return e.condition == "vanish1";
  }));
}

TEST_CASE("closure violation is reported at the missing weight") {
  CartanDatum sl3 = CartanDatum::lineGraph(2);
  // lambda + alpha_1, lambda + alpha_2, lambda + alpha_1 + alpha_2 present,
  // lambda itself missing.
  Support s({0, 0}, {{1, 0}, {0, 1}, {1, 1}});
  ConditionReport r = checkConditions(sl3, s);
  CHECK(!r.allHold());
  std::vector<Weight> bad;
  for (const auto& e : r.entries)
    if (e.condition == "closure") bad = e.violations;
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == Weight{{0, 0}, {0, 0}});
}

TEST_CASE("cycle positivity catches flat weights") {
  CartanDatum tri = CartanDatum::cycleGraph(3);
  Support flat({0, 0, 0}, {{0, 0, 0}});  // <lambda, delta> = 0
  ConditionReport r = checkConditions(tri, flat);
  bool sawTriangle = false;
  for (const auto& e : r.entries)
    if (e.condition == "vanish2") {
      sawTriangle = true;
      CHECK(e.violations.size() == 1);
    }
  CHECK(sawTriangle);
  CHECK(!r.allHold());

  Support positive({1, 1, 1}, {{0, 0, 0}});  // <lambda, delta> = 3 > 0
  CHECK(checkConditions(tri, positive).allHold());
}

TEST_CASE("square positivity entries exist for 4-cycles") {
  CartanDatum sq = CartanDatum::cycleGraph(4);
  Support flat({0, 0, 0, 0}, {{0, 0, 0, 0}});
  ConditionReport r = checkConditions(sq, flat);
  int squares = 0;
  for (const auto& e : r.entries)
    if (e.condition == "vanish2" && e.detail.rfind("square", 0) == 0) ++squares;
  CHECK(squares == 1);
  CHECK(!r.allHold());
}

TEST_CASE("grassmannian support, fixed instances") {
  Support a = grassmannianSupport(2, 2, 2);
  CHECK(a.size() == 3);
  CartanDatum sl2 = CartanDatum::lineGraph(1);
  std::set<std::vector<long long>> ps;
  for (const Weight& w : a.weights()) ps.insert(pairings(sl2, w));
  CHECK(ps == std::set<std::vector<long long>>{{2}, {0}, {-2}});

  Support b = grassmannianSupport(1, 2, 2);
  CHECK(b.size() == 1);
  CHECK(pairings(sl2, b.weights()[0]) == std::vector<long long>{0});

  Support c = grassmannianSupport(2, 3, 2);
  CHECK(c.size() == 6);
  CartanDatum sl3 = CartanDatum::lineGraph(2);
  std::set<std::vector<long long>> cs;
  for (const Weight& w : c.weights()) cs.insert(pairings(sl3, w));
  CHECK(cs == std::set<std::vector<long long>>{
                  {0, 2}, {1, 0}, {-1, 1}, {2, -2}, {0, -1}, {-2, 0}});

  CHECK_THROWS_AS(grassmannianSupport(1, 2, 5), EmptySupportError);
}

TEST_CASE("grassmannian supports satisfy all structural conditions") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 2; n <= 4; ++n) {
      CartanDatum d = CartanDatum::lineGraph(n - 1);
      for (long long N = 0; N <= static_cast<long long>(m) * n; ++N) {
        Support s = grassmannianSupport(m, n, N);
        CHECK(checkConditions(d, s).allHold());
      }
    }
}

TEST_CASE("weight rendering") {
  CHECK(Weight{{0, 0}, {1, -2}}.str() == "(1,-2)");
}
