#pragma once

// Lie-nilpotency certificates for varieties given by identity systems.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pivar/algebra.hpp"
#include "pivar/idcheck.hpp"

namespace pivar {

struct FieldMode {
  enum class Kind { Finite, InfiniteCharP };
  Kind kind = Kind::Finite;
  FieldSpec field;  // GF(q) for finite mode, GF(p) for the infinite one

  static FieldMode finite(FieldSpec f) { return {Kind::Finite, f}; }
  static FieldMode infinite(std::uint32_t p) { return {Kind::InfiniteCharP, FieldSpec::make(p)}; }

  std::uint32_t characteristic() const { return field.characteristic(); }
  Semantics semantics() const { return kind == Kind::Finite ? Semantics::Finite : Semantics::Infinite; }
  std::string to_string() const;
};

struct CertBounds {
  std::uint32_t truncation = 0;  // 0 picks the maximal degree of the system
  std::uint32_t ext_bound = 4;
  std::uint64_t budget = kDefaultBudget;
};

/// A member of the system that factors as c * W_{n1}(..) * ... * W_{ns}(..)
/// over disjoint variable tuples (s >= 2, every n_i >= 2).
struct NonprimeWitness {
  bool asserted = false;  // user flag instead of a syntactic match
  std::size_t index = 0;
  std::uint32_t scalar = 1;
  std::vector<std::vector<Var>> factors;

  std::string to_string() const;
};

std::optional<NonprimeWitness> find_nonprime_witness(const IdentitySystem& sigma);

/// Recognizes c * W_n(z_1, ..., z_n) up to renaming; returns c and z.
std::optional<std::pair<std::uint32_t, std::vector<Var>>> match_lie_word(const NcPoly& g);

struct CatalogAlgebra {
  std::string tag;  // A(F), A(F)*, A(C), A(C)*, B(F,G,sigma)
  AlgebraPtr algebra;
};

/// Throws CapExceeded when the truncation is out of range.
std::vector<CatalogAlgebra> catalog(const FieldMode& mode, std::uint32_t truncation, std::uint32_t ext_bound);

struct CatalogResult {
  CatalogAlgebra entry;
  CheckVerdict verdict;
  std::string evidence;  // why this algebra is not Lie nilpotent
};

enum class Verdict { NotLieNilpotent, LieNilpotent, Inconclusive };
std::string_view to_string(Verdict v);

struct Certificate {
  FieldMode mode;
  std::vector<NcPoly> sigma;
  std::optional<NonprimeWitness> nonprime;
  std::vector<CatalogResult> catalog;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<std::string> hypotheses;
  CertBounds bounds;  // truncation filled in
};

/// Index of a member of the form c*[x, y^(p^t)], if any.
std::optional<std::size_t> find_engel_member(const IdentitySystem& sigma);

Certificate certify(const FieldMode& mode, const IdentitySystem& sigma, const CertBounds& bounds = {},
                    bool assume_nonprime = false);

}  // namespace pivar
