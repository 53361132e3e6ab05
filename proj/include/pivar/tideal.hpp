#pragma once

// Bounded-degree spans of T-ideal consequences and membership certificates.
//
// A consequence row is u * h_L * v where h is a multihomogeneous component
// of a generator, every variable y_i of h is replaced by a formal
// combination of candidate words, and h_L is the coefficient of one monomial
// L in the formal scalars. L is recorded as a multiset of words per variable
// (the "key"), so rows stay reproducible from their provenance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pivar/ncpoly.hpp"

namespace pivar {

enum class TMode { Multilinear, Graded };
std::string_view to_string(TMode m);

inline constexpr std::uint32_t kMaxMultilinearDegree = 8;
inline constexpr std::uint32_t kMaxGradedDegree = 6;

struct RowOrigin {
  std::size_t gen = 0;        // index into the generator list
  std::size_t component = 0;  // index into multihomogeneous_components(gen)
  /// For each variable of the component (ascending id), the words it takes.
  std::vector<std::pair<Var, std::vector<Word>>> key;
  Word left;
  Word right;

  std::string to_string() const;
};

/// Independent expansion of a row from its provenance.
NcPoly expand_origin(const std::vector<NcPoly>& gens, const RowOrigin& o);

struct SpanBlock {
  Multidegree degree;
  std::vector<NcPoly> rows;       // linearly independent consequences
  std::vector<RowOrigin> origins; // origins[i] produced rows[i]
  std::size_t generated = 0;      // rows produced before elimination
  std::size_t columns = 0;
};

struct SpanBasis {
  TMode mode = TMode::Multilinear;
  std::uint32_t degree = 0;
  std::vector<SpanBlock> blocks;

  std::size_t rank() const;
};

/// Consequences of total degree `degree` in `vars`: the multilinear block
/// (degree == vars.size()) or every multidegree block (graded).
/// Throws CapExceeded beyond the mode's degree cap.
SpanBasis consequence_basis(const std::vector<NcPoly>& gens, const std::vector<Var>& vars, std::uint32_t degree,
                            TMode mode);

struct MembershipCertificate {
  std::vector<std::pair<std::uint32_t, RowOrigin>> terms;  // coefficient in GF(p), row
};

struct MembershipResult {
  bool member = false;
  std::optional<MembershipCertificate> certificate;
  std::size_t rank = 0;
  std::size_t generated = 0;
  std::size_t columns = 0;
  std::uint32_t degree = 0;
};

/// Decides whether f lies in the span of consequences at its degree. A "no"
/// only speaks about that span, not about the whole T-ideal.
/// Throws CapExceeded and NotHomogeneous.
MembershipResult tideal_member(const NcPoly& f, const std::vector<NcPoly>& gens, std::uint32_t degree_bound,
                               TMode mode);

/// Sums the re-expanded certificate terms.
NcPoly reexpand(const std::vector<NcPoly>& gens, const MembershipCertificate& c, std::uint32_t p);

}  // namespace pivar
