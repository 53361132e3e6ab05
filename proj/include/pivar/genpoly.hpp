#pragma once

// Commutative polynomials over a finite field in "generic" variables.
//
// Generic variables stand for arbitrary field elements. Two evaluation
// semantics exist: formal (the field is treated as infinite, so a polynomial
// vanishes only when all coefficients do) and finite-q, where exponents are
// reduced with t^q = t so that the reduced form is zero exactly when the
// polynomial vanishes at every point of GF(q)^n.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pivar/field.hpp"

namespace pivar {

/// A monomial as a sorted multiset of variable ids: x0^2 x3 is {0, 0, 3}.
using GenMonomial = std::vector<std::uint32_t>;

class GenPoly {
 public:
  using Term = std::pair<GenMonomial, std::uint32_t>;  // packed coefficient

  GenPoly() = default;
  GenPoly(FieldSpec field, std::uint32_t pool);

  static GenPoly constant(FieldSpec field, std::uint32_t pool, std::uint32_t packed);
  static GenPoly variable(FieldSpec field, std::uint32_t pool, std::uint32_t var);

  const FieldSpec& field() const noexcept { return field_; }
  std::uint32_t pool() const noexcept { return pool_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Exponent list of a monomial as (variable, exponent) pairs.
  static std::vector<std::pair<std::uint32_t, std::uint32_t>> exponents(const GenMonomial& m);

  GenPoly& operator+=(const GenPoly& o);
  GenPoly& operator-=(const GenPoly& o);
  GenPoly operator-() const;
  GenPoly scaled(std::uint32_t packed) const;

  friend GenPoly operator+(GenPoly a, const GenPoly& b) { return a += b; }
  friend GenPoly operator-(GenPoly a, const GenPoly& b) { return a -= b; }
  friend bool operator==(const GenPoly& a, const GenPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Product. With reduce_q set, exponents e >= q become ((e-1) mod (q-1)) + 1.
  static GenPoly mul(const GenPoly& a, const GenPoly& b, std::optional<std::uint32_t> reduce_q = {});
  /// Reduces exponents by t^q = t.
  GenPoly reduced(std::uint32_t q) const;

  /// Value at a point; variables absent from the map evaluate to 0.
  std::uint32_t evaluate(const std::unordered_map<std::uint32_t, std::uint32_t>& point) const;

  std::string to_string() const;

 private:
  void check_compatible(const GenPoly& o) const;

  FieldSpec field_;
  std::uint32_t pool_ = 0;
  std::vector<Term> terms_;  // sorted by monomial, no zero coefficients
};

/// Applies the exponent reduction rule for GF(q) to a single exponent.
std::uint32_t reduce_exponent(std::uint32_t e, std::uint32_t q);

/// A supply of generic variables. Allocation by tag is idempotent: asking for
/// the same tag twice returns the same variables; different tags never share.
class GenericPool {
 public:
  explicit GenericPool(FieldSpec field, std::uint32_t capacity = 1u << 20);

  const FieldSpec& field() const noexcept { return field_; }
  std::uint32_t id() const noexcept { return id_; }
  std::uint32_t used() const noexcept { return next_; }

  /// First variable id of a block of n variables reserved for tag.
  std::uint32_t reserve(std::string_view tag, std::uint32_t n);
  GenPoly variable(std::uint32_t var) const { return GenPoly::variable(field_, id_, var); }
  GenPoly constant(std::uint32_t packed) const { return GenPoly::constant(field_, id_, packed); }
  GenPoly zero() const { return GenPoly(field_, id_); }

 private:
  FieldSpec field_;
  std::uint32_t id_;
  std::uint32_t capacity_;
  std::uint32_t next_ = 0;
  std::unordered_map<std::string, std::pair<std::uint32_t, std::uint32_t>> tags_;
};

}  // namespace pivar
