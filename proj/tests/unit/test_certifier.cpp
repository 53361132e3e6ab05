#include <doctest.h>

#include <algorithm>
#include <set>

#include "pivar/certifier.hpp"

using namespace pivar;

namespace {

NcPoly V(std::uint32_t p, const std::string& n) { return NcPoly::variable(p, var(n)); }

NcPoly w3w3(std::uint32_t p) {
  auto a = var_range("a", 3), b = var_range("b", 3);
  return lie_word(p, a) * lie_word(p, b);
}

std::vector<std::string> names(const std::vector<CatalogAlgebra>& c) {
  std::vector<std::string> out;
  for (const auto& e : c) out.push_back(e.algebra->name());
  return out;
}

}  // namespace

TEST_CASE("find_nonprime_witness") {
  auto w = find_nonprime_witness(IdentitySystem({w3w3(2)}));
  REQUIRE(w);
  CHECK(w->factors.size() == 2);
  CHECK(w->factors[0].size() == 3);
  CHECK(w->factors[1].size() == 3);

  auto x = V(3, "x"), y = V(3, "y");
  CHECK_FALSE(find_nonprime_witness(IdentitySystem({commutator(x * x, y)})));

  auto v = var_range("x", 4);
  auto small = lie_word(3, std::span(v).first(2)) * lie_word(3, std::span(v).subspan(2, 2));
  auto ws = find_nonprime_witness(IdentitySystem({x * x * x, small.scaled(2)}));
  REQUIRE(ws);
  CHECK(ws->index == 1);
  CHECK(ws->scalar % 3 != 0);
  REQUIRE(ws->factors.size() == 2);
  CHECK(std::set<Var>(ws->factors[0].begin(), ws->factors[0].end()) == std::set<Var>{v[0], v[1]});
  CHECK(std::set<Var>(ws->factors[1].begin(), ws->factors[1].end()) == std::set<Var>{v[2], v[3]});

  // Renamed and reordered variables still match.
  auto r = lie_word(3, std::vector<Var>{var("q"), var("p")}) * lie_word(3, std::vector<Var>{var("z"), var("a"), var("m")});
  CHECK(find_nonprime_witness(IdentitySystem({r})));

  // Overlapping tuples or non-Lie factors do not.
  auto xy = NcPoly::word(3, {v[0], v[1]});
  CHECK_FALSE(find_nonprime_witness(IdentitySystem({xy * lie_word(3, std::span(v).subspan(2, 2))})));
  CHECK_FALSE(find_nonprime_witness(IdentitySystem({lie_word(3, std::span(v).first(2)) * lie_word(3, std::span(v).first(2))})));
  CHECK_FALSE(find_nonprime_witness(IdentitySystem({lie_word(3, v)})));
}

TEST_CASE("match_lie_word") {
  auto v = var_range("z", 5);
  for (std::size_t n = 2; n <= 5; ++n) {
    auto m = match_lie_word(lie_word(5, std::span(v).first(n)).scaled(2));
    REQUIRE(m);
    CHECK(m->second.size() == n);
    CHECK(lie_word(5, m->second).scaled(m->first) == lie_word(5, std::span(v).first(n)).scaled(2));
  }
}

TEST_CASE("catalog") {
  auto inf = catalog(FieldMode::infinite(2), 3, 4);
  CHECK(inf.size() == 2);
  CHECK(names(inf) == std::vector<std::string>{"A(C(3))", "op(A(C(3)))"});

  auto f2 = catalog(FieldMode::finite(FieldSpec::make(2)), 3, 2);
  CHECK(names(f2) == std::vector<std::string>{"A(F)", "op(A(F))", "A(C(3))", "op(A(C(3)))", "B(2,4,1)"});
  CHECK(catalog(FieldMode::finite(FieldSpec::make(2)), 3, 1).size() == 4);
  auto full = catalog(FieldMode::finite(FieldSpec::make(2)), 3, 4);
  CHECK(names(full) == std::vector<std::string>{"A(F)", "op(A(F))", "A(C(3))", "op(A(C(3)))", "B(2,4,1)",
                                                "B(2,8,1)", "B(2,8,2)", "B(2,16,2)"});
  CHECK_THROWS_WITH_AS(catalog(FieldMode::infinite(2), 13, 4), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("certify: {[x^2,y], W3*W3} is Lie nilpotent in both modes") {
  auto x = V(2, "x"), y = V(2, "y");
  IdentitySystem sigma({commutator(x * x, y), w3w3(2)});
  for (auto mode : {FieldMode::finite(FieldSpec::make(2)), FieldMode::infinite(2)}) {
    auto cert = certify(mode, sigma);
    CHECK(cert.verdict == Verdict::LieNilpotent);
    REQUIRE(cert.nonprime);
    CHECK_FALSE(cert.nonprime->asserted);
    CHECK(cert.bounds.truncation == 6);
    for (const auto& r : cert.catalog) {
      CAPTURE(r.entry.algebra->name());
      REQUIRE(r.verdict.no());
      REQUIRE(r.verdict.witness->concrete());
      CHECK(recheck(*r.verdict.failing, r.entry.algebra, *r.verdict.witness));
      if (r.entry.tag == "A(C)") CHECK(*r.verdict.failing == commutator(x * x, y));
    }
  }
}

TEST_CASE("certify: A_p is not Lie nilpotent") {
  auto x = V(2, "x"), y = V(2, "y"), z = V(2, "z");
  auto v = var_range("u", 4);
  auto w2w2 = lie_word(2, std::span(v).first(2)) * lie_word(2, std::span(v).subspan(2, 2));
  IdentitySystem sigma({commutator(y, z) * x, y * y * x, w2w2});
  for (auto mode : {FieldMode::infinite(2), FieldMode::finite(FieldSpec::make(2))}) {
    auto cert = certify(mode, sigma);
    CHECK(cert.verdict == Verdict::NotLieNilpotent);
    auto it = std::find_if(cert.catalog.begin(), cert.catalog.end(), [](const auto& r) { return r.verdict.yes(); });
    REQUIRE(it != cert.catalog.end());
    CHECK(it->entry.tag == "A(C)");
    CHECK(satisfies_system(it->entry.algebra, sigma, mode.semantics()).yes());
  }
}

TEST_CASE("certify: missing non-primeness witness") {
  auto x = V(2, "x"), y = V(2, "y");
  IdentitySystem sigma({commutator(x * x, y)});
  auto cert = certify(FieldMode::finite(FieldSpec::make(2)), sigma);
  CHECK(cert.verdict == Verdict::Inconclusive);
  CHECK(cert.reason.find("non-primeness") != std::string::npos);
  auto flagged = certify(FieldMode::finite(FieldSpec::make(2)), sigma, {}, true);
  CHECK(flagged.verdict == Verdict::LieNilpotent);
  CHECK(flagged.nonprime->asserted);

  CHECK_THROWS_WITH_AS(certify(FieldMode::infinite(3), sigma), doctest::Contains("CharMismatch"), Error);
  CertBounds low;
  low.truncation = 2;
  CHECK_THROWS_WITH_AS(certify(FieldMode::infinite(2), sigma, low), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("budget exhaustion forces INCONCLUSIVE") {
  auto x = V(2, "x"), y = V(2, "y");
  // A tiny budget cannot finish any exhaustive run.
  IdentitySystem sigma({commutator(x * x, y), w3w3(2)});
  CertBounds tiny;
  tiny.budget = 3;
  auto cert = certify(FieldMode::finite(FieldSpec::make(2)), sigma, tiny);
  CHECK(cert.verdict != Verdict::NotLieNilpotent);
}

TEST_CASE("Engel shortcut agrees with direct checks") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 2}, {2, 4}, {3, 3}}) {
    auto x = V(p, "x"), y = V(p, "y");
    auto e = commutator(x, pow(y, n));
    IdentitySystem sigma({e, w3w3(p)});
    REQUIRE(find_engel_member(sigma) == std::size_t{0});
    auto cert = certify(FieldMode::finite(FieldSpec::make(p)), sigma, {}, false);
    for (const auto& r : cert.catalog) {
      if (r.entry.tag == "A(C)" || r.entry.tag == "A(C)*") continue;
      CAPTURE(r.entry.algebra->name());
      CHECK(r.verdict.method == "engel-shortcut");
      REQUIRE(r.verdict.no());
      CHECK(recheck(*r.verdict.failing, r.entry.algebra, *r.verdict.witness));
      CHECK(satisfies_system(r.entry.algebra, sigma, Semantics::Finite).no());
    }
  }
}

TEST_CASE("verdicts are stable when bounds grow") {
  auto x = V(2, "x"), y = V(2, "y"), z = V(2, "z");
  std::vector<IdentitySystem> corpus{IdentitySystem({commutator(x * x, y), w3w3(2)}),
                                     IdentitySystem({commutator(y, z) * x, y * y * x, w3w3(2)})};
  for (const auto& sigma : corpus) {
    auto base = certify(FieldMode::finite(FieldSpec::make(2)), sigma, {6, 2, kDefaultBudget}).verdict;
    auto big = certify(FieldMode::finite(FieldSpec::make(2)), sigma, {7, 4, kDefaultBudget}).verdict;
    if (base != Verdict::Inconclusive) CHECK(big == base);
  }
}
