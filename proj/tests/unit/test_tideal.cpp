#include <doctest.h>

#include <random>

#include "pivar/linalg.hpp"
#include "pivar/tideal.hpp"

using namespace pivar;

namespace {

bool span_contains(const SpanBasis& s, const NcPoly& f) {
  // Oracle: dense elimination over the row words, independent of the sparse solver.
  std::map<Word, std::size_t, WordLess> col;
  for (const auto& b : s.blocks)
    for (const auto& r : b.rows)
      for (const auto& [w, c] : r.terms()) col.emplace(w, 0);
  for (const auto& [w, c] : f.terms())
    if (!col.count(w)) return false;
  std::size_t i = 0;
  for (auto& [w, idx] : col) idx = i++;
  const std::uint32_t p = f.characteristic();
  auto F = FieldSpec::make(p);
  EchelonBasis e(F, col.size());
  auto vec = [&](const NcPoly& g) {
    Vec v(col.size(), 0);
    for (const auto& [w, c] : g.terms()) v[col.at(w)] = c;
    return v;
  };
  for (const auto& b : s.blocks)
    for (const auto& r : b.rows) e.add(vec(r));
  return e.contains(vec(f));
}

}  // namespace

TEST_CASE("consequence_basis examples") {
  auto x = var_range("x", 3);
  auto w2 = lie_word(3, std::span(x).first(2));
  auto s2 = consequence_basis({w2}, {x[0], x[1]}, 2, TMode::Multilinear);
  REQUIRE(s2.rank() == 1);
  CHECK((s2.blocks[0].rows[0] == w2 || s2.blocks[0].rows[0] == -w2));

  auto s3 = consequence_basis({w2}, x, 3, TMode::Multilinear);
  CHECK(span_contains(s3, lie_word(3, x)));
  // The degree-3 multilinear part of T([x1,x2]) is spanned by a*[b,c] and [b,c]*a: rank 5 of 6.
  CHECK(s3.rank() == 5);

  Var a = var("x"), b = var("y");
  auto X = NcPoly::variable(2, a), Y = NcPoly::variable(2, b);
  auto sq = consequence_basis({X * X}, {a, b}, 2, TMode::Graded);
  CHECK(span_contains(sq, X * Y + Y * X));
  CHECK_FALSE(span_contains(sq, X * Y));
  CHECK(sq.blocks.size() == 3);

  CHECK_THROWS_WITH_AS(consequence_basis({w2}, var_range("x", 9), 9, TMode::Multilinear),
                       doctest::Contains("CapExceeded"), Error);
  CHECK_THROWS_WITH_AS(consequence_basis({w2}, {a, b}, 7, TMode::Graded), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("every basis row re-expands from its provenance") {
  std::mt19937 rng(4);
  auto x = var_range("x", 4);
  Var a = var("x"), b = var("y");
  auto X = NcPoly::variable(3, a), Y = NcPoly::variable(3, b);
  std::vector<std::pair<std::vector<NcPoly>, SpanBasis>> cases;
  std::vector<NcPoly> g1{lie_word(2, std::span(x).first(3))};
  cases.emplace_back(g1, consequence_basis(g1, x, 4, TMode::Multilinear));
  std::vector<NcPoly> g2{X * X * Y - Y * X * X + X * Y};
  cases.emplace_back(g2, consequence_basis(g2, {a, b}, 4, TMode::Graded));
  for (auto& [gens, basis] : cases) {
    for (const auto& blk : basis.blocks) {
      REQUIRE(blk.rows.size() == blk.origins.size());
      for (int k = 0; k < 10 && !blk.rows.empty(); ++k) {
        std::size_t i = rng() % blk.rows.size();
        CHECK(expand_origin(gens, blk.origins[i]) == blk.rows[i]);
      }
    }
  }
}

TEST_CASE("tideal_member examples") {
  auto y = var_range("y", 6);
  auto w3a = lie_word(2, std::span(y).first(3));
  auto w3b = lie_word(2, std::span(y).subspan(3, 3));
  auto x = var_range("x", 4);
  std::vector<NcPoly> gens{lie_word(2, x)};
  auto f = w3a * w3b;
  auto r = tideal_member(f, gens, 6, TMode::Multilinear);
  REQUIRE(r.member);
  REQUIRE(r.certificate);
  CHECK(reexpand(gens, *r.certificate, 2) == f);
  CHECK(r.columns == 720);

  auto x1x2 = NcPoly::word(5, {x[0], x[1]});
  std::vector<NcPoly> w2{lie_word(5, std::span(x).first(2))};
  auto no = tideal_member(x1x2, w2, 2, TMode::Multilinear);
  CHECK_FALSE(no.member);
  CHECK(no.rank == 1);

  Var a = var("x"), b = var("y");
  auto X = NcPoly::variable(3, a), Y = NcPoly::variable(3, b);
  auto g = X * X * Y - Y * X * X;
  auto self = tideal_member(g, {g}, 3, TMode::Graded);
  REQUIRE(self.member);
  CHECK(reexpand({g}, *self.certificate, 3) == g);

  CHECK_THROWS_WITH_AS(tideal_member(X * X + X, {g}, 3, TMode::Graded), doctest::Contains("NotHomogeneous"), Error);
  CHECK_THROWS_WITH_AS(tideal_member(X * X, {g}, 3, TMode::Multilinear), doctest::Contains("NotHomogeneous"), Error);
  CHECK_THROWS_WITH_AS(tideal_member(X * X * X, {g}, 2, TMode::Graded), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("graded membership handles partial linearization in char p") {
  // Over GF(2), x^2 = 0 yields xy + yx but not xy; x^2 y is a consequence.
  Var a = var("x"), b = var("y");
  auto X = NcPoly::variable(2, a), Y = NcPoly::variable(2, b);
  auto r = tideal_member(X * Y + Y * X, {X * X}, 2, TMode::Graded);
  REQUIRE(r.member);
  CHECK(reexpand({X * X}, *r.certificate, 2) == X * Y + Y * X);
  CHECK_FALSE(tideal_member(X * Y, {X * X}, 2, TMode::Graded).member);
  auto r3 = tideal_member(X * X * Y + Y * X * Y + Y * Y * X, {X * X}, 3, TMode::Graded);
  REQUIRE(r3.member);
  CHECK(reexpand({X * X}, *r3.certificate, 2) == X * X * Y + Y * X * Y + Y * Y * X);
}

TEST_CASE("substituting y2 -> y2 z into [[x1,y1],[x2,y2]]") {
  Var x1 = var("x1"), y1 = var("y1"), x2 = var("x2"), y2 = var("y2"), z = var("z");
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto X1 = NcPoly::variable(p, x1), Y1 = NcPoly::variable(p, y1), X2 = NcPoly::variable(p, x2),
         Y2 = NcPoly::variable(p, y2), Z = NcPoly::variable(p, z);
    auto f = commutator(commutator(X1, Y1), commutator(X2, Y2));
    auto g = substitute(f, {{y2, Y2 * Z}});
    auto expected = commutator(commutator(X1, Y1), Y2) * commutator(X2, Z) +
                    commutator(X2, Y2) * commutator(commutator(X1, Y1), Z);
    auto u = commutator(X1, Y1);
    CHECK(g == expected + commutator(u, commutator(X2, Y2)) * Z + Y2 * commutator(u, commutator(X2, Z)));
    // g - expected lies in T(f): check at multilinear degree 5 with the certificate.
    CHECK(tideal_member(g, {f}, 5, TMode::Multilinear).member);
    auto diff = g - expected;
    auto r = tideal_member(diff, {f}, 5, TMode::Multilinear);
    REQUIRE(r.member);
    CHECK(reexpand({f}, *r.certificate, p) == diff);
  }
}
