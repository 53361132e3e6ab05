#pragma once

// Exact linear algebra over finite fields.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pivar/field.hpp"

namespace pivar {

using Vec = std::vector<std::uint32_t>;  // packed field elements
using Matrix = std::vector<Vec>;         // row-major

/// Incrementally built reduced row echelon basis of a subspace of F^n.
class EchelonBasis {
 public:
  EchelonBasis(FieldSpec field, std::size_t n) : field_(field), n_(n) {}

  /// Adds v to the spanning set; returns true when it enlarged the span.
  bool add(const Vec& v);
  /// Reduces v modulo the span; zero iff v lies in it.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ambient() const noexcept { return n_; }
  const std::vector<Vec>& rows() const noexcept { return rows_; }

 private:
  FieldSpec field_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

Matrix mat_mul(const FieldSpec& f, const Matrix& a, const Matrix& b);
bool is_zero(const Matrix& m);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> mat_inverse(const FieldSpec& f, Matrix m);
/// M^e by repeated squaring.
Matrix mat_pow(const FieldSpec& f, const Matrix& m, std::uint64_t e);

/// Sparse echelon form over a prime field GF(p) for large, sparse systems.
///
/// Rows are kept in semi-echelon form (distinct leading columns). When
/// tracking is on, every stored row remembers its expression as a
/// combination of the inserted rows, which membership queries return.
class SparseEchelon {
 public:
  using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (column, coefficient)

  SparseEchelon(std::uint32_t p, std::size_t columns, bool track);

  /// Inserts a row (with a caller-chosen id); returns true when independent.
  bool insert(SparseRow row, std::uint32_t id);
  /// Combination of inserted row ids whose sum equals target, if any.
  std::optional<SparseRow> express(const SparseRow& target) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t columns() const noexcept { return columns_; }

 private:
  struct Stored {
    SparseRow row;      // leading entry normalized to 1
    SparseRow combo;    // ids -> coefficients
  };
  // Reduces row in place; accumulates the negated pivot combinations in combo.
  void reduce(SparseRow& row, SparseRow* combo) const;

  std::uint32_t p_;
  std::size_t columns_;
  bool track_;
  std::vector<Stored> rows_;
  std::vector<std::int32_t> pivot_of_;  // column -> row index or -1
};

}  // namespace pivar
