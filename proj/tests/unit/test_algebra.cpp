#include <doctest.h>

#include <random>

#include "pivar/algebra.hpp"

using namespace pivar;

namespace {

AlgElem elem(const AlgebraPtr& a, Vec c) { return {a, std::move(c)}; }

AlgElem random_elem(std::mt19937& rng, const AlgebraPtr& a) {
  Vec c(a->dim());
  for (auto& x : c) x = rng() % a->field().order();
  return {a, c};
}

bool basis_associative_bruteforce(const AlgebraPtr& a) {
  const auto n = static_cast<std::uint32_t>(a->dim());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) {
        auto bi = basis_element(a, i), bj = basis_element(a, j), bk = basis_element(a, k);
        if ((bi * bj) * bk != bi * (bj * bk)) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("from_structure_constants") {
  auto F2 = FieldSpec::make(2);
  CHECK(from_structure_constants(F2, 1, {})->dim() == 1);
  auto af = from_structure_constants(F2, 2, {{0, 0, {{0, F2.one()}}}, {0, 1, {{1, F2.one()}}}});
  CHECK(af->same_structure(*make_A(field_algebra(F2))));

  // b1*b1 = b2, b2*b1 = b1 is not associative: (b1 b1) b1 = b1 but b1 (b1 b1) = 0.
  CHECK_THROWS_WITH_AS(from_structure_constants(F2, 2, {{0, 0, {{1, F2.one()}}}, {1, 0, {{0, F2.one()}}}}),
                       doctest::Contains("NotAssociative"), Error);
  CHECK_THROWS_WITH_AS(from_structure_constants(F2, 1, {{0, 3, {}}}), doctest::Contains("ShapeError"), Error);
}

TEST_CASE("make_C") {
  auto F2 = FieldSpec::make(2);
  auto c1 = make_C(1, F2);
  CHECK(c1->dim() == 1);
  CHECK((basis_element(c1, 0) * basis_element(c1, 0)).is_zero());

  auto c2 = make_C(2, F2);
  CHECK(c2->labels() == std::vector<std::string>{"c1", "c2", "c1c2"});
  CHECK(basis_element(c2, 0) * basis_element(c2, 1) == basis_element(c2, 2));
  CHECK((basis_element(c2, 0) * basis_element(c2, 2)).is_zero());

  // Every element of C_3 over GF(2) squares to zero, and C is commutative.
  auto c3 = make_C(3, F2);
  for (std::uint32_t m = 0; m < 128; ++m) {
    Vec v(7);
    for (int i = 0; i < 7; ++i) v[i] = m >> i & 1;
    auto a = elem(c3, v);
    CHECK((a * a).is_zero());
  }
  for (std::uint32_t i = 0; i < 7; ++i)
    for (std::uint32_t j = 0; j < 7; ++j)
      CHECK(basis_element(c3, i) * basis_element(c3, j) == basis_element(c3, j) * basis_element(c3, i));

  CHECK_THROWS_WITH_AS(make_C(13, F2), doctest::Contains("CapExceeded"), Error);
  CHECK_THROWS_WITH_AS(make_C(0, F2), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("make_A") {
  auto F2 = FieldSpec::make(2);
  auto af = make_A(field_algebra(F2));
  auto e1 = basis_element(af, 0), e2 = basis_element(af, 1);
  CHECK(e1 * e1 == e1);
  CHECK(e1 * e2 == e2);
  CHECK((e2 * e1).is_zero());
  CHECK((e2 * e2).is_zero());
  CHECK(af->provenance() == Provenance::A);

  auto ac1 = make_A(make_C(1, F2));
  CHECK(ac1->dim() == 2);
  CHECK(ac1->nonzero_products() == 0);

  auto ac3 = make_A(make_C(3, FieldSpec::make(3)));
  for (std::uint32_t u = 7; u < 14; ++u)
    for (std::uint32_t v = 0; v < 14; ++v) CHECK((basis_element(ac3, u) * basis_element(ac3, v)).is_zero());
}

TEST_CASE("valid_sigmas") {
  auto F2 = FieldSpec::make(2);
  CHECK(valid_sigmas(F2, FieldSpec::make(2, 2)) == std::vector<std::uint32_t>{1});
  CHECK(valid_sigmas(F2, FieldSpec::make(2, 4)) == std::vector<std::uint32_t>{2});
  CHECK(valid_sigmas(F2, FieldSpec::make(2, 6)).empty());
  CHECK(valid_sigmas(FieldSpec::make(3), FieldSpec::make(3, 2)) == std::vector<std::uint32_t>{1});
  CHECK(valid_sigmas(F2, FieldSpec::make(2, 3)) == std::vector<std::uint32_t>{1, 2});
  CHECK_THROWS_WITH_AS(valid_sigmas(F2, F2), doctest::Contains("NotAnExtension"), Error);
}

TEST_CASE("make_B") {
  auto F2 = FieldSpec::make(2), G = FieldSpec::make(2, 2);
  auto b = make_B(F2, G, 1);
  CHECK(b->dim() == 4);
  ExtensionBasis eb(F2, G);
  const std::uint32_t w = G.generator();
  auto pair = [&](std::uint32_t x, std::uint32_t y) { return elem(b, b_element(eb, x, y)); };
  for (std::uint32_t x = 0; x < 4; ++x)
    for (std::uint32_t c = 0; c < 4; ++c) {
      CHECK(pair(x, 0) * pair(0, c) == pair(0, G.mul(x, c)));
      CHECK(pair(0, c) * pair(x, 0) == pair(0, G.mul(c, G.frobenius(x, 1))));
    }
  CHECK(pair(w, 0) * pair(0, 1) - pair(0, 1) * pair(w, 0) == pair(0, G.sub(w, G.frobenius(w, 1))));
  CHECK_THROWS_WITH_AS(make_B(F2, G, 2), doctest::Contains("InvalidSigma"), Error);
  CHECK_THROWS_WITH_AS(make_B(F2, FieldSpec::make(2, 6), 1), doctest::Contains("InvalidSigma"), Error);

  // Commutators are strictly upper, so [x,y][z,t] vanishes; sampled over every B in reach.
  std::mt19937 rng(1);
  for (auto bb : {b, make_B(F2, FieldSpec::make(2, 4), 2), make_B(FieldSpec::make(3), FieldSpec::make(3, 2), 1),
                  make_B(FieldSpec::make(2, 2), FieldSpec::make(2, 4), 2)}) {
    CHECK(basis_associative_bruteforce(bb));
    const std::size_t m = bb->dim() / 2;
    for (int i = 0; i < 40; ++i) {
      auto x = random_elem(rng, bb), y = random_elem(rng, bb), z = random_elem(rng, bb), t = random_elem(rng, bb);
      auto c1 = x * y - y * x;
      for (std::size_t k = 0; k < m; ++k) CHECK(c1.coords[k] == 0);
      CHECK((c1 * (z * t - t * z)).is_zero());
    }
  }
}

TEST_CASE("extension basis over a non-prime base") {
  auto F = FieldSpec::make(2, 2), G = FieldSpec::make(2, 4);
  ExtensionBasis eb(F, G);
  CHECK(eb.degree() == 2);
  for (std::uint32_t g = 0; g < G.order(); ++g) CHECK(eb.from_coords(eb.to_coords(g)) == g);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t c = 0; c < 4; ++c) {
      CHECK(eb.embed(F.mul(a, c)) == G.mul(eb.embed(a), eb.embed(c)));
      CHECK(eb.embed(F.add(a, c)) == G.add(eb.embed(a), eb.embed(c)));
    }
}

TEST_CASE("matrix_algebra and opposite") {
  auto F2 = FieldSpec::make(2);
  auto m2 = matrix_algebra(2, F2);
  CHECK(m2->dim() == 4);
  CHECK(basis_element(m2, 0) * basis_element(m2, 1) == basis_element(m2, 1));
  CHECK((basis_element(m2, 1) * basis_element(m2, 1)).is_zero());
  CHECK(matrix_algebra(3, F2)->dim() == 9);
  CHECK_THROWS_WITH_AS(matrix_algebra(5, F2), doctest::Contains("CapExceeded"), Error);

  auto c2 = make_C(2, F2);
  CHECK(opposite(c2)->same_structure(*c2));
  auto af = make_A(field_algebra(F2));
  auto op = opposite(af);
  CHECK(op->name() == "op(A(F))");
  CHECK(basis_element(op, 1) * basis_element(op, 0) == basis_element(op, 1));
  CHECK((basis_element(op, 0) * basis_element(op, 1)).is_zero());
  auto back = opposite(op);
  CHECK(back->same_structure(*af));
  CHECK(back->name() == af->name());
  CHECK(back->provenance() == Provenance::A);
  auto ac2 = make_A(c2);
  CHECK(opposite(opposite(ac2))->same_structure(*ac2));
  CHECK(op->base_provenance() == Provenance::A);
}

TEST_CASE("evaluate_poly") {
  auto F2 = FieldSpec::make(2);
  auto ac3 = make_A(make_C(3, F2));
  Var x = var("x"), y = var("y");
  auto X = NcPoly::variable(2, x), Y = NcPoly::variable(2, y);
  // (u1,u2): coordinates 0..6 for u1, 7..13 for u2; subset s sits at index s-1.
  auto pair = [&](std::uint32_t s1, std::uint32_t s2) {
    Vec v(14, 0);
    if (s1) v[s1 - 1] = 1;
    if (s2) v[7 + s2 - 1] = 1;
    return elem(ac3, v);
  };
  auto xe = pair(1, 2), ye = pair(4, 0);
  auto sq = evaluate_poly(X * X, ac3, {{x, xe}});
  CHECK(sq == pair(0, 3));
  auto w = evaluate_poly(commutator(X * X, Y), ac3, {{x, xe}, {y, ye}});
  CHECK(w == pair(0, 7));
  CHECK(w.to_string() == "(0,c1c2c3)");
  CHECK(evaluate_poly(commutator(X, Y), ac3, {{x, xe}, {y, xe}}).is_zero());

  CHECK_THROWS_WITH_AS(evaluate_poly(X * Y, ac3, {{x, xe}}), doctest::Contains("MissingAssignment"), Error);
  CHECK_THROWS_WITH_AS(evaluate_poly(NcPoly::variable(3, x), ac3, {{x, xe}}), doctest::Contains("CharMismatch"),
                       Error);
}

TEST_CASE("x^p at a sum of distinct generators in A(C_{p+1})") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = FieldSpec::make(p);
    auto a = make_A(make_C(p + 1, F));
    const std::uint32_t n = (1u << (p + 1)) - 1;
    Vec v(2 * n, 0);
    for (std::uint32_t g = 0; g + 1 < p; ++g) v[(1u << g) - 1] = 1;
    v[n + (1u << (p - 1)) - 1] = 1;
    Var x = var("x");
    auto r = evaluate_poly(pow(NcPoly::variable(p, x), p), a, {{x, elem(a, v)}});
    std::uint64_t fact = 1;
    for (std::uint32_t i = 2; i < p; ++i) fact = fact * i % p;
    Vec expected(2 * n, 0);
    expected[n + (1u << p) - 2] = static_cast<std::uint32_t>(fact);
    CHECK(r.coords == expected);
  }
}

TEST_CASE("evaluation is a homomorphism and respects the opposite algebra") {
  std::mt19937 rng(17);
  auto F3 = FieldSpec::make(3);
  Var x = var("x"), y = var("y"), z = var("z");
  std::vector<Var> vs{x, y, z};
  for (auto a : {make_A(make_C(2, F3)), matrix_algebra(2, F3), make_B(F3, FieldSpec::make(3, 2), 1)}) {
    auto op = opposite(a);
    for (int trial = 0; trial < 20; ++trial) {
      auto rand_poly = [&] {
        NcPoly f(3);
        for (int t = 0; t < 3; ++t) {
          Word w;
          for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i) w.push_back(vs[rng() % 3]);
          f += NcPoly::word(3, w, 1 + rng() % 2);
        }
        return f;
      };
      auto f = rand_poly(), g = rand_poly();
      std::map<Var, AlgElem> asg, asg_op;
      for (Var v : vs) {
        asg[v] = random_elem(rng, a);
        asg_op[v] = elem(op, asg[v].coords);
      }
      CHECK(evaluate_poly(f * g, a, asg) == evaluate_poly(f, a, asg) * evaluate_poly(g, a, asg));
      CHECK(evaluate_poly(f + g, a, asg) == evaluate_poly(f, a, asg) + evaluate_poly(g, a, asg));

      Word w;
      for (int i = 0; i < 4; ++i) w.push_back(vs[rng() % 3]);
      Word rev(w.rbegin(), w.rend());
      CHECK(evaluate_poly(NcPoly::word(3, w), op, asg_op).coords == evaluate_poly(NcPoly::word(3, rev), a, asg).coords);
    }
  }
}

TEST_CASE("generic elements") {
  auto F2 = FieldSpec::make(2);
  auto c2 = make_C(2, F2);
  GenericPool pool(F2);
  auto g1 = generic_element(c2, pool, "x");
  auto g2 = generic_element(c2, pool, "y");
  std::set<std::uint32_t> ids;
  for (auto& c : g1.coords) ids.insert(c.terms().at(0).first.at(0));
  for (auto& c : g2.coords) CHECK(ids.count(c.terms().at(0).first.at(0)) == 0);
  CHECK(generic_element(field_algebra(F2), pool, "z").coords.size() == 1);

  // Specializing generic evaluation lands on the field evaluation.
  auto a = make_A(make_C(2, FieldSpec::make(3)));
  GenericPool p3(a->field());
  Var x = var("x"), y = var("y");
  auto X = NcPoly::variable(3, x), Y = NcPoly::variable(3, y);
  auto f = commutator(X * X, Y) + X * Y * X;
  auto gx = generic_element(a, p3, "x"), gy = generic_element(a, p3, "y");
  auto gen = evaluate_poly(f, a, {{x, gx}, {y, gy}}, std::nullopt);
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::unordered_map<std::uint32_t, std::uint32_t> point;
    AlgElem ex{a, Vec(a->dim())}, ey{a, Vec(a->dim())};
    for (std::size_t i = 0; i < a->dim(); ++i) {
      ex.coords[i] = rng() % 3;
      ey.coords[i] = rng() % 3;
      point[gx.coords[i].terms()[0].first[0]] = ex.coords[i];
      point[gy.coords[i].terms()[0].first[0]] = ey.coords[i];
    }
    auto val = evaluate_poly(f, a, {{x, ex}, {y, ey}});
    for (std::size_t k = 0; k < a->dim(); ++k) CHECK(gen.coords[k].evaluate(point) == val.coords[k]);
  }
}
