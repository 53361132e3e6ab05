#include <doctest.h>

#include <random>

#include "pivar/ncpoly.hpp"

using namespace pivar;

namespace {

NcPoly X(std::uint32_t p, const char* n) { return NcPoly::variable(p, var(n)); }

NcPoly random_poly(std::mt19937& rng, std::uint32_t p, const std::vector<Var>& vars, int max_len) {
  NcPoly f(p);
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    Word w;
    int len = 1 + static_cast<int>(rng() % max_len);
    for (int i = 0; i < len; ++i) w.push_back(vars[rng() % vars.size()]);
    f += NcPoly::word(p, w, 1 + rng() % (p - 1));
  }
  return f;
}

}  // namespace

TEST_CASE("ncpoly_arith examples") {
  auto x = X(3, "x"), y = X(3, "y");
  CHECK((x * y) == NcPoly::word(3, {var("x"), var("y")}));
  auto x2 = X(2, "x");
  CHECK((x2 + x2).is_zero());
  auto sq = (x + y) * (x + y);
  CHECK(sq.size() == 4);
  CHECK(sq == x * x + x * y + y * x + y * y);
  CHECK_THROWS_WITH_AS(x + x2, doctest::Contains("CharMismatch"), Error);
  CHECK(x.scaled(3).is_zero());
  CHECK(x.scaled(-1) == -x);
}

TEST_CASE("commutator examples") {
  auto x = X(3, "x"), y = X(3, "y");
  CHECK(commutator(x, y) == x * y - y * x);
  CHECK(commutator(x * y + y, x * y + y).is_zero());
  auto x2 = X(2, "x"), y2 = X(2, "y");
  CHECK(commutator(x2, y2) == x2 * y2 + y2 * x2);
}

TEST_CASE("lie_word examples") {
  auto v = var_range("x", 5);
  auto x1 = NcPoly::variable(5, v[0]), x2 = NcPoly::variable(5, v[1]), x3 = NcPoly::variable(5, v[2]);
  CHECK(lie_word(5, std::span(v).first(2)) == x1 * x2 - x2 * x1);
  CHECK(lie_word(5, std::span(v).first(3)) == x1 * x2 * x3 - x2 * x1 * x3 - x3 * x1 * x2 + x3 * x2 * x1);
  CHECK(lie_word(5, v).size() == 16);
  CHECK_THROWS_WITH_AS(lie_word(5, std::span(v).first(1)), doctest::Contains("BadArity"), Error);
  std::vector<Var> dup{v[0], v[0]};
  CHECK_THROWS_WITH_AS(lie_word(5, dup), doctest::Contains("BadArity"), Error);
  auto many = var_range("z", 13);
  CHECK_THROWS_AS(lie_word(2, many), Error);
}

TEST_CASE("lie_word recursion holds for 3 <= n <= 7") {
  auto v = var_range("x", 7);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    for (std::size_t n = 3; n <= 7; ++n) {
      auto s = std::span(v).first(n);
      CHECK(lie_word(p, s) == commutator(lie_word(p, s.first(n - 1)), NcPoly::variable(p, v[n - 1])));
      if (p != 2) CHECK(lie_word(p, s).size() == (std::size_t{1} << (n - 1)));
    }
  }
}

TEST_CASE("engel_polynomial examples") {
  Var x = var("x"), y = var("y");
  auto X5 = NcPoly::variable(5, x), Y5 = NcPoly::variable(5, y);
  auto e = engel_polynomial(5, 2, x, y);
  CHECK(e.closed == X5 * Y5 * Y5 - (Y5 * X5 * Y5).scaled(2) + Y5 * Y5 * X5);
  CHECK(e.recursive == e.closed);

  auto X2 = NcPoly::variable(2, x), Y2 = NcPoly::variable(2, y);
  auto e2 = engel_polynomial(2, 2, x, y);
  CHECK(e2.closed == X2 * Y2 * Y2 + Y2 * Y2 * X2);
  CHECK(e2.closed == commutator(X2, Y2 * Y2));

  CHECK(engel_polynomial(7, 1, x, y).closed == commutator(NcPoly::variable(7, x), NcPoly::variable(7, y)));
  CHECK_THROWS_WITH_AS(engel_polynomial(2, 1, x, x), doctest::Contains("BadArity"), Error);
  CHECK_THROWS_WITH_AS(engel_polynomial(2, 0, x, y), doctest::Contains("BadArity"), Error);
}

TEST_CASE("engel recursive and closed forms agree") {
  Var x = var("x"), y = var("y");
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t n = 1; n <= 8; ++n) {
      auto e = engel_polynomial(p, n, x, y);
      CAPTURE(p);
      CAPTURE(n);
      CHECK(e.recursive == e.closed);
    }
  }
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 4}, {3, 3}, {3, 9}}) {
    auto e = engel_polynomial(p, n, x, y);
    CHECK(e.closed == commutator(NcPoly::variable(p, x), pow(NcPoly::variable(p, y), n)));
  }
}

TEST_CASE("Jacobi identity on random polynomials") {
  std::mt19937 rng(3);
  std::vector<Var> vs{var("x"), var("y"), var("z")};
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int i = 0; i < 20; ++i) {
      auto f = random_poly(rng, p, vs, 2), g = random_poly(rng, p, vs, 2), h = random_poly(rng, p, vs, 2);
      CHECK((commutator(commutator(f, g), h) + commutator(commutator(g, h), f) + commutator(commutator(h, f), g))
                .is_zero());
      CHECK(commutator(f, g) == -commutator(g, f));
    }
  }
}

TEST_CASE("substitute") {
  Var x = var("x"), y = var("y");
  auto X3 = X(3, "x"), Y3 = X(3, "y");
  auto f = commutator(X3, Y3);
  auto nested = substitute(f, {{x, commutator(X3, Y3)}});
  std::vector<Var> xyy{x, y, y};
  CHECK(nested == commutator(commutator(X3, Y3), Y3));
  CHECK(nested == engel_polynomial(3, 2, x, y).closed);

  auto X2 = X(2, "x"), Y2 = X(2, "y");
  CHECK(substitute(X2 * X2, {{x, X2 + Y2}}) == X2 * X2 + X2 * Y2 + Y2 * X2 + Y2 * Y2);
  CHECK(substitute(f, {}) == f);
  CHECK(substitute(f, {{x, X3}, {y, Y3}}) == f);

  // Composition of substitutions.
  std::mt19937 rng(5);
  std::vector<Var> vs{x, y};
  for (int i = 0; i < 20; ++i) {
    auto g = random_poly(rng, 3, vs, 3);
    std::map<Var, NcPoly> s1{{x, random_poly(rng, 3, vs, 2)}, {y, random_poly(rng, 3, vs, 2)}};
    std::map<Var, NcPoly> s2{{x, random_poly(rng, 3, vs, 2)}, {y, random_poly(rng, 3, vs, 2)}};
    std::map<Var, NcPoly> composed;
    for (auto& [v, img] : s1) composed[v] = substitute(img, s2);
    CHECK(substitute(substitute(g, s1), s2) == substitute(g, composed));
  }
}

TEST_CASE("multihomogeneous_components") {
  auto x = X(3, "x"), y = X(3, "y");
  auto parts = multihomogeneous_components(x * x + x * y);
  CHECK(parts.size() == 2);
  CHECK(multihomogeneous_components(x * y * x).size() == 1);
  auto c = multihomogeneous_components(commutator(x, y));
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == Multidegree{{var("x"), 1}, {var("y"), 1}});

  std::mt19937 rng(9);
  std::vector<Var> vs{var("x"), var("y"), var("z")};
  for (int i = 0; i < 30; ++i) {
    auto f = random_poly(rng, 5, vs, 4);
    NcPoly sum(5);
    std::set<Multidegree> keys;
    for (auto& [md, part] : multihomogeneous_components(f)) {
      sum += part;
      CHECK(keys.insert(md).second);
      for (auto& [w, co] : part.terms()) CHECK(multidegree(w) == md);
    }
    CHECK(sum == f);
  }
}

TEST_CASE("full_linearization") {
  Var x = var("x"), y = var("y");
  auto X2 = X(2, "x");
  auto a = NcPoly::variable(2, var("x_1")), b = NcPoly::variable(2, var("x_2"));
  CHECK(full_linearization(X2 * X2, {x}) == a * b + b * a);

  auto X3 = X(3, "x"), Y3 = X(3, "y");
  auto a3 = NcPoly::variable(3, var("x_1")), b3 = NcPoly::variable(3, var("x_2"));
  CHECK(full_linearization(X3 * X3 * Y3, {x}) == a3 * b3 * Y3 + b3 * a3 * Y3);
  CHECK(full_linearization(commutator(X3, Y3), {x, y}) == commutator(X3, Y3));

  CHECK_THROWS_WITH_AS(full_linearization(X3 * X3 + X3, {x}), doctest::Contains("NotHomogeneous"), Error);

  // Multilinear output for random multihomogeneous input.
  auto lin = full_linearization(pow(X3, 3) * Y3 * Y3 + X3 * Y3 * X3 * Y3 * X3, {x, y});
  for (auto& [w, c] : lin.terms()) {
    std::set<Var> seen(w.begin(), w.end());
    CHECK(seen.size() == w.size());
    CHECK(w.size() == 5);
  }
  CHECK(lin.is_multilinear());
}

TEST_CASE("printing") {
  auto x = X(3, "x"), y = X(3, "y");
  CHECK((x * y - y * x).to_string() == "x*y - y*x");
  CHECK((x * x * y).to_string() == "x^2*y");
  CHECK(NcPoly(3).to_string() == "0");
}
