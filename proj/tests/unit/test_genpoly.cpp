#include <doctest.h>

#include <random>

#include "pivar/genpoly.hpp"

using namespace pivar;

TEST_CASE("generic_poly_arith examples") {
  auto F = FieldSpec::make(2);
  GenericPool pool(F);
  auto base = pool.reserve("t", 1);
  GenPoly t = pool.variable(base);

  CHECK((t + t).is_zero());

  GenPoly sq = GenPoly::mul(t, t) + t;
  CHECK_FALSE(sq.is_zero());
  CHECK(sq.size() == 2);
  CHECK((GenPoly::mul(t, t, 2u) + t).is_zero());
  CHECK(sq.reduced(2).is_zero());
}

TEST_CASE("exponent reduction rule") {
  CHECK(reduce_exponent(0, 4) == 0);
  CHECK(reduce_exponent(3, 4) == 3);
  CHECK(reduce_exponent(4, 4) == 1);
  CHECK(reduce_exponent(7, 4) == 1);
  CHECK(reduce_exponent(8, 4) == 2);
  CHECK(reduce_exponent(5, 2) == 1);
}

TEST_CASE("pools keep tags disjoint") {
  auto F = FieldSpec::make(3);
  GenericPool pool(F, 10);
  auto a = pool.reserve("x", 4);
  auto b = pool.reserve("y", 4);
  CHECK(a != b);
  CHECK(pool.reserve("x", 4) == a);
  CHECK_THROWS_WITH_AS(pool.reserve("z", 4), doctest::Contains("PoolExhausted"), Error);

  GenericPool other(F);
  other.reserve("x", 1);
  CHECK_THROWS_WITH_AS(pool.variable(a) + other.variable(0), doctest::Contains("PoolMismatch"), Error);
}

TEST_CASE("reduced form vanishes iff the polynomial vanishes on GF(q)^n") {
  std::mt19937 rng(7);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto F = FieldSpec::make(p, k);
    const std::uint32_t q = F.order();
    for (std::uint32_t n = 1; n <= 3; ++n) {
      GenericPool pool(F);
      auto base = pool.reserve("v", n);
      for (int trial = 0; trial < 60; ++trial) {
        // Random sparse polynomial with exponents up to 2q, plus a forced
        // vanishing part v^q - v on some trials.
        GenPoly g = pool.zero();
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
          GenPoly m = pool.constant(1 + rng() % (q - 1));
          for (std::uint32_t v = 0; v < n; ++v) {
            std::uint32_t e = rng() % (2 * q + 1);
            for (std::uint32_t i = 0; i < e; ++i) m = GenPoly::mul(m, pool.variable(base + v));
          }
          g += m;
        }
        if (trial % 2) {
          g = pool.zero();
          GenPoly x = pool.variable(base + rng() % n);
          GenPoly xq = x;
          for (std::uint32_t i = 1; i < q; ++i) xq = GenPoly::mul(xq, x);
          g = GenPoly::mul(xq - x, pool.variable(base + rng() % n));
        }
        bool vanishes = true;
        std::uint32_t points = 1;
        for (std::uint32_t i = 0; i < n; ++i) points *= q;
        for (std::uint32_t pt = 0; pt < points && vanishes; ++pt) {
          std::unordered_map<std::uint32_t, std::uint32_t> point;
          std::uint32_t x = pt;
          for (std::uint32_t v = 0; v < n; ++v, x /= q) point[base + v] = x % q;
          vanishes = g.evaluate(point) == 0;
        }
        CHECK(g.reduced(q).is_zero() == vanishes);
      }
    }
  }
}

TEST_CASE("ring axioms on random generic polynomials") {
  auto F = FieldSpec::make(3, 2);
  GenericPool pool(F);
  auto base = pool.reserve("v", 3);
  std::mt19937 rng(11);
  auto rand_poly = [&] {
    GenPoly g = pool.zero();
    for (int t = 0; t < 3; ++t) {
      GenPoly m = pool.constant(1 + rng() % 8);
      for (int i = 0; i < static_cast<int>(rng() % 3); ++i) m = GenPoly::mul(m, pool.variable(base + rng() % 3));
      g += m;
    }
    return g;
  };
  for (int i = 0; i < 30; ++i) {
    auto a = rand_poly(), b = rand_poly(), c = rand_poly();
    CHECK(GenPoly::mul(a, b) == GenPoly::mul(b, a));
    CHECK(GenPoly::mul(GenPoly::mul(a, b), c) == GenPoly::mul(a, GenPoly::mul(b, c)));
    CHECK(GenPoly::mul(a, b + c) == GenPoly::mul(a, b) + GenPoly::mul(a, c));
    CHECK((a + b) - b == a);
  }
}
