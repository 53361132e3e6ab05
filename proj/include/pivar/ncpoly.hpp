#pragma once

// Noncommutative polynomials of the free associative algebra over GF(p).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pivar/error.hpp"

namespace pivar {

/// Variable identifier. Names are interned process-wide.
using Var = std::uint32_t;

Var var(std::string_view name);
const std::string& var_name(Var v);
/// Variables named prefix1 .. prefixN.
std::vector<Var> var_range(std::string_view prefix, std::size_t n, std::size_t first = 1);

/// A word (monomial) of the free algebra; the empty word is the unit.
using Word = std::vector<Var>;

/// Length-then-lexicographic order on variable ids.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Multidegree: variable -> positive degree.
using Multidegree = std::map<Var, std::uint32_t>;

Multidegree multidegree(const Word& w);

class NcPoly {
 public:
  using Term = std::pair<Word, std::uint32_t>;

  NcPoly() = default;
  explicit NcPoly(std::uint32_t p);

  static NcPoly variable(std::uint32_t p, Var x);
  static NcPoly word(std::uint32_t p, Word w, std::int64_t coeff = 1);
  static NcPoly constant(std::uint32_t p, std::int64_t c);
  /// Builds a polynomial from raw terms; like terms are combined.
  static NcPoly from_terms(std::uint32_t p, std::vector<Term> terms);

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Terms sorted by WordLess, coefficients in [1, p).
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::uint32_t coefficient(const Word& w) const;
  /// Maximum word length, or -1 for the zero polynomial.
  int degree() const;
  std::set<Var> variables() const;
  bool is_multilinear() const;
  bool is_homogeneous() const;

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(const NcPoly& o);
  NcPoly operator-() const;
  NcPoly scaled(std::int64_t c) const;

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

  /// Text form accepted back by the parser, e.g. "x*y - y*x".
  std::string to_string() const;

 private:
  void check_char(const NcPoly& o) const;

  std::uint32_t p_ = 0;
  std::vector<Term> terms_;
};

NcPoly pow(const NcPoly& f, std::uint32_t e);

/// fg - gf.
NcPoly commutator(const NcPoly& f, const NcPoly& g);

/// Left-normed commutator [x1, ..., xn], fully expanded (2^(n-1) words).
inline constexpr std::size_t kMaxLieWordLength = 12;
NcPoly lie_word(std::uint32_t p, std::span<const Var> vars);

/// W_{n+1}(x, y, ..., y) computed two ways: by substituting into the
/// left-normed commutator, and by the binomial sum of (-1)^k C(n,k) y^k x y^(n-k).
struct EngelForms {
  NcPoly recursive;
  NcPoly closed;
};
EngelForms engel_polynomial(std::uint32_t p, std::uint32_t n, Var x, Var y);

/// Endomorphism image; unassigned variables map to themselves.
NcPoly substitute(const NcPoly& f, const std::map<Var, NcPoly>& assignment);

/// Components keyed by multidegree, in increasing key order.
std::vector<std::pair<Multidegree, NcPoly>> multihomogeneous_components(const NcPoly& f);

/// Full linearization in the target variables. A target of degree d > 1 is
/// replaced by fresh variables named <name>_1 .. <name>_d (extra underscores
/// are inserted on a clash) and the component multilinear in them is kept.
/// Degree-1 targets are left as they are.
NcPoly full_linearization(const NcPoly& f, const std::set<Var>& targets);

// Commutator-monomial representations and the S / D degree sets.

struct ReprTerm {
  enum class Kind { Plain, Comm };
  Kind kind = Kind::Plain;
  std::int64_t coeff = 1;
  Word left;  // the whole word for Plain terms
  Var i = 0;
  Var j = 0;
  Word right;

  static ReprTerm plain(Word w, std::int64_t c = 1) { return {Kind::Plain, c, std::move(w), 0, 0, {}}; }
  static ReprTerm comm(Word a, Var i, Var j, Word b, std::int64_t c = 1) {
    return {Kind::Comm, c, std::move(a), i, j, std::move(b)};
  }
};

/// The polynomial denoted by a representation.
NcPoly denote(std::uint32_t p, std::span<const ReprTerm> rep);

struct DegreeSets {
  std::set<std::uint32_t> S;
  /// Bilateral degrees; absent when the representation has a plain term.
  std::optional<std::set<std::pair<std::uint32_t, std::uint32_t>>> D;
};

DegreeSets degree_sets(std::span<const ReprTerm> rep, const std::set<Var>& vars);
/// D alone; throws MalformedRepresentation unless every term is a commutator monomial.
std::set<std::pair<std::uint32_t, std::uint32_t>> bilateral_degrees(std::span<const ReprTerm> rep,
                                                                    const std::set<Var>& vars);

}  // namespace pivar
