#pragma once

// Finite-dimensional associative algebras given by structure constants, the
// catalog constructors C_N, A(U), B(F,G,sigma), M_n(F), opposite algebras,
// and evaluation of noncommutative polynomials at algebra elements.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pivar/field.hpp"
#include "pivar/genpoly.hpp"
#include "pivar/linalg.hpp"
#include "pivar/ncpoly.hpp"

namespace pivar {

enum class Provenance { Field, C, A, B, Matrix, Opposite, Custom };

std::string_view to_string(Provenance p);

/// One structure-constant entry: b_i * b_j = sum of coeff * b_k.
struct ProductEntry {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::vector<std::pair<std::uint32_t, Scalar>> terms;
};

class StructAlgebra;
using AlgebraPtr = std::shared_ptr<const StructAlgebra>;

/// Assembles an algebra without the associativity check.
AlgebraPtr build_algebra(FieldSpec field, std::size_t dim, const std::vector<ProductEntry>& table,
                         std::vector<std::string> labels, std::string name, Provenance provenance,
                         Provenance base_provenance);

class StructAlgebra {
 public:
  struct Row {
    std::uint32_t right;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;  // (k, packed coefficient)
  };

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  Provenance provenance() const noexcept { return provenance_; }
  /// Provenance of the algebra an opposite was taken of (same as provenance() otherwise).
  Provenance base_provenance() const noexcept { return base_provenance_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Nonzero products b_i * b_j, sorted by j.
  std::span<const Row> row(std::uint32_t i) const { return rows_.at(i); }
  /// b_i * b_j as a coordinate vector.
  Vec basis_product(std::uint32_t i, std::uint32_t j) const;
  std::size_t nonzero_products() const;

  /// Product of coordinate vectors over any coordinate ring.
  template <class Ring>
  std::vector<typename Ring::value_type> multiply(const Ring& ring,
                                                  std::span<const typename Ring::value_type> a,
                                                  std::span<const typename Ring::value_type> b) const;

  Vec multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const;

  /// Re-checks associativity on every basis triple that can be nonzero.
  /// Returns the first violating triple, if any.
  std::optional<std::array<std::uint32_t, 3>> find_associativity_violation() const;

  bool same_structure(const StructAlgebra& other) const;
  std::vector<ProductEntry> entries() const;

 private:
  friend AlgebraPtr build_algebra(FieldSpec, std::size_t, const std::vector<ProductEntry>&,
                                  std::vector<std::string>, std::string, Provenance, Provenance);
  StructAlgebra() = default;

  FieldSpec field_;
  std::size_t dim_ = 0;
  std::string name_;
  Provenance provenance_ = Provenance::Custom;
  Provenance base_provenance_ = Provenance::Custom;
  std::vector<std::string> labels_;
  std::vector<std::vector<Row>> rows_;
};

/// Validates shape and associativity. Throws ShapeError or NotAssociative.
AlgebraPtr from_structure_constants(FieldSpec field, std::size_t dim, const std::vector<ProductEntry>& table,
                                    std::vector<std::string> labels = {}, std::string name = "custom");

/// The field F as a one-dimensional algebra (b * b = b).
AlgebraPtr field_algebra(FieldSpec field);
/// Truncation of C on N square-zero commuting generators; basis = nonempty subsets.
inline constexpr std::uint32_t kMaxCGenerators = 12;
AlgebraPtr make_C(std::uint32_t n, FieldSpec field);
/// Pairs (u1, u2) with (u1, u2)(v1, v2) = (u1 v1, u1 v2).
AlgebraPtr make_A(const AlgebraPtr& u);
AlgebraPtr matrix_algebra(std::uint32_t n, FieldSpec field);
AlgebraPtr opposite(const AlgebraPtr& a);

/// Exponents j in [1, [G:GF(p)]) for which x -> x^(p^j) fixes F and has as
/// fixed field the unique maximal proper subfield of G containing F.
std::vector<std::uint32_t> valid_sigmas(const FieldSpec& F, const FieldSpec& G);

/// Coordinates of G as a vector space over a subfield F, in the basis
/// 1, t, ..., t^(m-1) where t generates G and m = [G:F].
class ExtensionBasis {
 public:
  ExtensionBasis(FieldSpec F, FieldSpec G);

  const FieldSpec& base() const noexcept { return F_; }
  const FieldSpec& extension() const noexcept { return G_; }
  std::uint32_t degree() const noexcept { return m_; }
  /// Image of an element of F in G.
  std::uint32_t embed(std::uint32_t f) const;
  /// F-coordinates (length m) of an element of G.
  Vec to_coords(std::uint32_t g) const;
  std::uint32_t from_coords(const Vec& c) const;

 private:
  FieldSpec F_, G_;
  std::uint32_t m_ = 0;
  std::uint32_t root_ = 0;        // image of F's generator in G
  Matrix to_prime_coords_;       // GF(p)-coords of G -> (i, a) coefficients
};

/// B(F, G, sigma) with sigma = x -> x^(p^j); dimension 2[G:F] over F. Basis:
/// (t^i, 0) for i < m, then (0, t^i). Throws InvalidSigma.
AlgebraPtr make_B(FieldSpec F, FieldSpec G, std::uint32_t j);
/// Coordinates of the element (b, c) of make_B(F, G, j).
Vec b_element(const ExtensionBasis& basis, std::uint32_t b, std::uint32_t c);

// Elements.

/// Coordinate ring of packed field elements.
struct FieldRing {
  using value_type = std::uint32_t;
  FieldSpec field;
  value_type zero() const { return 0; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return field.add(a, b); }
  value_type mul(value_type a, value_type b) const { return field.mul(a, b); }
  value_type scale(value_type a, std::uint32_t c) const { return field.mul(a, c); }
};

/// Coordinate ring of generic polynomials; reduce_q selects finite-q semantics.
struct GenericRing {
  using value_type = GenPoly;
  FieldSpec field;
  std::uint32_t pool = 0;
  std::optional<std::uint32_t> reduce_q;
  value_type zero() const { return GenPoly(field, pool); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type mul(const value_type& a, const value_type& b) const { return GenPoly::mul(a, b, reduce_q); }
  value_type scale(const value_type& a, std::uint32_t c) const { return a.scaled(c); }
};

struct AlgElem {
  AlgebraPtr algebra;
  Vec coords;

  bool is_zero() const;
  /// Nonzero coordinates as "c*label" terms.
  std::string to_string() const;
};

AlgElem basis_element(const AlgebraPtr& a, std::uint32_t i);
AlgElem zero_element(const AlgebraPtr& a);
AlgElem operator+(const AlgElem& a, const AlgElem& b);
AlgElem operator-(const AlgElem& a, const AlgElem& b);
AlgElem operator*(const AlgElem& a, const AlgElem& b);
AlgElem scale(const AlgElem& a, std::uint32_t packed);
bool operator==(const AlgElem& a, const AlgElem& b);

struct GenericElem {
  AlgebraPtr algebra;
  std::vector<GenPoly> coords;

  bool is_zero() const;
};

/// Element whose coordinates are fresh generic variables reserved under tag.
GenericElem generic_element(const AlgebraPtr& a, GenericPool& pool, std::string_view tag);

/// Precompiled word trie of a polynomial, reusable across many evaluations.
class EvalPlan {
 public:
  explicit EvalPlan(const NcPoly& f);

  const std::vector<Var>& variables() const noexcept { return vars_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  /// slots[i] is the value of variables()[i].
  template <class Ring>
  std::vector<typename Ring::value_type> run(const StructAlgebra& a, const Ring& ring,
                                             std::span<const std::vector<typename Ring::value_type>> slots) const;

  /// Fast path for packed field coordinates using preallocated buffers.
  Vec run_field(const StructAlgebra& a, std::span<const Vec> slots) const;

 private:
  struct Node {
    std::int32_t parent;  // -1 for the root (empty word)
    std::uint32_t slot;
  };
  std::uint32_t p_ = 0;
  std::vector<Var> vars_;
  std::vector<Node> nodes_;                                    // parents precede children
  std::vector<std::pair<std::uint32_t, std::uint32_t>> outputs_;  // (node, coefficient in GF(p))
  bool has_constant_ = false;
};

/// f evaluated at field-valued elements. Throws CharMismatch, MissingAssignment.
AlgElem evaluate_poly(const NcPoly& f, const AlgebraPtr& a, const std::map<Var, AlgElem>& assignment);
/// f evaluated at generic elements, with optional finite-q reduction.
GenericElem evaluate_poly(const NcPoly& f, const AlgebraPtr& a, const std::map<Var, GenericElem>& assignment,
                          std::optional<std::uint32_t> reduce_q);

// Template definitions.

template <class Ring>
std::vector<typename Ring::value_type> StructAlgebra::multiply(const Ring& ring,
                                                               std::span<const typename Ring::value_type> a,
                                                               std::span<const typename Ring::value_type> b) const {
  std::vector<typename Ring::value_type> out(dim_, ring.zero());
  for (std::uint32_t i = 0; i < dim_; ++i) {
    if (ring.is_zero(a[i])) continue;
    for (const auto& r : rows_[i]) {
      if (ring.is_zero(b[r.right])) continue;
      auto prod = ring.mul(a[i], b[r.right]);
      for (const auto& [k, c] : r.terms) out[k] = ring.add(out[k], ring.scale(prod, c));
    }
  }
  return out;
}

template <class Ring>
std::vector<typename Ring::value_type> EvalPlan::run(const StructAlgebra& a, const Ring& ring,
                                                     std::span<const std::vector<typename Ring::value_type>> slots) const {
  using V = std::vector<typename Ring::value_type>;
  if (has_constant_) throw Error(ErrorKind::ShapeError, "cannot evaluate the unit word in a non-unital algebra");
  std::vector<V> values(nodes_.size());
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const Node& node = nodes_[n];
    const V& x = slots[node.slot];
    if (node.parent < 0)
      values[n] = x;
    else
      values[n] = a.multiply<Ring>(ring, values[static_cast<std::size_t>(node.parent)], x);
  }
  V out(a.dim(), ring.zero());
  FieldSpec f = a.field();
  for (const auto& [node, c] : outputs_) {
    std::uint32_t cf = f.from_int(c);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = ring.add(out[k], ring.scale(values[node][k], cf));
  }
  return out;
}

}  // namespace pivar
