#include <doctest.h>

#include <random>

#include "pivar/ncpoly.hpp"

using namespace pivar;

namespace {
using Pairs = std::set<std::pair<std::uint32_t, std::uint32_t>>;
}

TEST_CASE("degree sets of x[x,y]x^2 + y^5[y,z]") {
  Var x = var("x"), y = var("y"), z = var("z");
  std::vector<ReprTerm> rep{ReprTerm::comm({x}, x, y, {x, x}),
                            ReprTerm::comm({y, y, y, y, y}, y, z, {})};
  auto ds = degree_sets(rep, {x, y});
  CHECK(ds.S == std::set<std::uint32_t>{4, 1, 0, 6});
  REQUIRE(ds.D.has_value());
  CHECK(*ds.D == Pairs{{2, 2}, {1, 3}, {1, 0}, {0, 1}, {0, 0}, {6, 0}, {5, 1}});
  CHECK(bilateral_degrees(rep, {x, y}) == *ds.D);

  // The denoted polynomial matches the bracket expansion.
  auto X = NcPoly::variable(2, x), Y = NcPoly::variable(2, y), Z = NcPoly::variable(2, z);
  CHECK(denote(2, rep) == X * commutator(X, Y) * X * X + pow(Y, 5) * commutator(Y, Z));
}

TEST_CASE("degenerate representations") {
  Var x = var("x"), y = var("y"), z = var("z");
  std::vector<ReprTerm> plain{ReprTerm::plain({x})};
  auto ds = degree_sets(plain, {x});
  CHECK(ds.S == std::set<std::uint32_t>{1});
  CHECK_FALSE(ds.D.has_value());
  CHECK_THROWS_WITH_AS(bilateral_degrees(plain, {x}), doctest::Contains("MalformedRepresentation"), Error);

  std::vector<ReprTerm> bare{ReprTerm::comm({}, y, z, {})};
  auto d2 = degree_sets(bare, {x});
  CHECK(d2.S == std::set<std::uint32_t>{0});
  CHECK(*d2.D == Pairs{{0, 0}});

  std::vector<ReprTerm> bad{ReprTerm::comm({}, y, y, {})};
  CHECK_THROWS_WITH_AS(degree_sets(bad, {y}), doctest::Contains("MalformedRepresentation"), Error);
}

TEST_CASE("S equals the sums of D for commutator-only representations") {
  std::mt19937 rng(21);
  std::vector<Var> vs{var("x"), var("y"), var("z"), var("t")};
  auto rand_word = [&](int max) {
    Word w;
    int n = static_cast<int>(rng() % (max + 1));
    for (int i = 0; i < n; ++i) w.push_back(vs[rng() % vs.size()]);
    return w;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ReprTerm> rep;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Var i = vs[rng() % vs.size()], j;
      do j = vs[rng() % vs.size()];
      while (j == i);
      rep.push_back(ReprTerm::comm(rand_word(3), i, j, rand_word(3)));
    }
    std::set<Var> sel;
    for (Var v : vs)
      if (rng() % 2) sel.insert(v);
    if (sel.empty()) sel.insert(vs[0]);
    auto ds = degree_sets(rep, sel);
    REQUIRE(ds.D.has_value());
    std::set<std::uint32_t> sums;
    for (auto [a, b] : *ds.D) sums.insert(a + b);
    CHECK(sums == ds.S);
  }
}
