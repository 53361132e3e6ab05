#pragma once

// Finite fields GF(p^k) with packed element encoding.
//
// An element is stored as the integer sum c_i p^i of its coordinates in the
// power basis 1, t, ..., t^{k-1} modulo the field's modulus. Field
// descriptors are interned: every FieldSpec for the same (p, k) refers to one
// immutable table set that lives for the duration of the program.

#include <cstdint>
#include <string>
#include <vector>

#include "pivar/error.hpp"

namespace pivar {

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 20;

namespace detail {
struct FieldData;
}

class Scalar;

class FieldSpec {
 public:
  FieldSpec() = default;

  /// Returns GF(p^k) with the lexicographically smallest monic irreducible
  /// modulus of degree k. Throws NotPrime, DegreeOutOfRange or CapExceeded.
  static FieldSpec make(std::uint32_t p, std::uint32_t k = 1,
                        std::uint64_t cap = kDefaultFieldCap);

  bool valid() const noexcept { return data_ != nullptr; }
  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t order() const;
  /// Coefficients c_0..c_k of the modulus, c_k = 1.
  const std::vector<std::uint32_t>& modulus() const;
  std::string name() const;

  // Packed-value arithmetic. Inputs must be < order().
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// a^(p^j).
  std::uint32_t frobenius(std::uint32_t a, std::uint32_t j) const;
  /// Image of an integer in the prime subfield.
  std::uint32_t from_int(std::int64_t n) const;
  std::vector<std::uint32_t> coords(std::uint32_t a) const;
  std::uint32_t pack(const std::vector<std::uint32_t>& coords) const;
  /// The class of t, a root of the modulus (equals 1 ... 0 when k = 1).
  std::uint32_t generator() const;

  Scalar element(std::uint32_t packed) const;
  Scalar zero() const;
  Scalar one() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.data_ == b.data_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.data_ != b.data_;
  }

 private:
  explicit FieldSpec(const detail::FieldData* d) : data_(d) {}
  const detail::FieldData& data() const;

  const detail::FieldData* data_ = nullptr;
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldSpec field, std::uint32_t packed);

  const FieldSpec& field() const noexcept { return field_; }
  std::uint32_t packed() const noexcept { return value_; }
  std::vector<std::uint32_t> coords() const { return field_.coords(value_); }
  bool is_zero() const noexcept { return value_ == 0; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar operator-() const { return {field_, field_.neg(value_)}; }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) noexcept { return !(a == b); }

 private:
  FieldSpec field_;
  std::uint32_t value_ = 0;
};

Scalar inv(const Scalar& a);
Scalar pow(const Scalar& a, std::uint64_t e);
Scalar frobenius_power(const Scalar& a, std::uint32_t j);
/// Polynomial notation in t, e.g. "t^2+1" or "2".
std::string to_string(const Scalar& a);

bool is_prime(std::uint64_t n);

struct SubfieldLattice {
  /// Degrees d over the prime field with deg(F) | d | deg(G), ascending.
  std::vector<std::uint32_t> degrees;
  /// Maximal proper elements of that lattice (empty when F = G).
  std::vector<std::uint32_t> maximal_proper;

  bool has_unique_maximal() const { return maximal_proper.size() == 1; }
};

/// Intermediate fields of G containing F, reported by degree over GF(p).
SubfieldLattice subfield_lattice(const FieldSpec& F, const FieldSpec& G);

}  // namespace pivar
