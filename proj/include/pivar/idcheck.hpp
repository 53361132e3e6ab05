#pragma once

// Identity checking in finite-dimensional algebras, the lower Lie chain and
// the Engel condition.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pivar/algebra.hpp"
#include "pivar/ncpoly.hpp"

namespace pivar {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct IdentitySystem {
  std::vector<NcPoly> polys;

  /// Throws ShapeError when empty and CharMismatch on mixed characteristics.
  explicit IdentitySystem(std::vector<NcPoly> polys);
  std::uint32_t characteristic() const { return polys.front().characteristic(); }
  int max_degree() const;
};

/// Finite: statements about the algebra over its own finite field, with
/// exponent reduction t^q = t. Infinite: formal vanishing, i.e. statements
/// about the algebra after extending scalars to an infinite field.
enum class Semantics { Finite, Infinite };
std::string_view to_string(Semantics s);

enum class Holds { Yes, No, BudgetExceeded };
std::string_view to_string(Holds h);

struct Witness {
  /// A concrete field point; empty when only a formal witness is known.
  std::map<Var, AlgElem> assignment;
  AlgElem value;
  /// Label and nonzero generic coordinate, set for generic refutations.
  std::string formal;

  bool concrete() const { return !assignment.empty(); }
  std::string to_string() const;
};

struct CheckVerdict {
  Holds holds = Holds::Yes;
  Semantics semantics = Semantics::Finite;
  std::string method;  // exhaustive, multilinear-basis, generic, ad-nilpotency, lie-chain
  std::uint64_t evaluations = 0;
  /// The polynomial that failed (for systems: the first failing member).
  std::optional<NcPoly> failing;
  std::size_t failing_index = 0;
  std::optional<Witness> witness;
  /// Extra explanation, e.g. which catalog shortcut was taken.
  std::string note;

  bool yes() const { return holds == Holds::Yes; }
  bool no() const { return holds == Holds::No; }
};

/// Re-evaluates a concrete witness: true when f at the assignment is nonzero
/// and equals the recorded value.
bool recheck(const NcPoly& f, const AlgebraPtr& a, const Witness& w);

/// Enumerates assignments (basis tuples first). Multilinear f is settled on
/// basis tuples alone. "Yes" is returned only after complete coverage.
CheckVerdict is_identity_exhaustive(const AlgebraPtr& a, const NcPoly& f, std::uint64_t budget = kDefaultBudget);

/// Evaluates f at independent generic elements. A refutation is specialized
/// to a field point when one is found within the budget.
CheckVerdict is_identity_generic(const AlgebraPtr& a, const NcPoly& f, Semantics semantics,
                                 std::uint64_t budget = kDefaultBudget, std::uint64_t seed = 1);

struct LieChain {
  std::vector<std::size_t> dims;             // dim L_1, dim L_2, ...
  std::optional<std::size_t> nilpotency_class;  // first k with L_k = 0
  std::vector<Vec> stable;                   // basis of the stable term when not nilpotent
};

LieChain lie_lower_chain(const AlgebraPtr& a);
inline LieChain is_lie_nilpotent(const AlgebraPtr& a) { return lie_lower_chain(a); }

/// Checks that ad(y): v -> [v, y] is nilpotent for every y. A refutation
/// names y and a basis element x with ad(y)^dim(x) != 0; its failing
/// polynomial is the Engel polynomial of length dim + 1.
CheckVerdict is_engel(const AlgebraPtr& a, std::uint64_t budget = kDefaultBudget);

/// Conjunction over the system; exhaustive where the full enumeration fits
/// into the budget under finite semantics, generic otherwise.
CheckVerdict satisfies_system(const AlgebraPtr& a, const IdentitySystem& sigma, Semantics semantics,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace pivar
