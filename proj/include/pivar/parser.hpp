#pragma once

// Text input: polynomials, representations, fields, modes, algebras.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pivar/algebra.hpp"
#include "pivar/certifier.hpp"
#include "pivar/ncpoly.hpp"

namespace pivar {

/// Grammar:
///   sum     := ['-'] product (('+' | '-') product)*
///   product := power (['*'] power)*
///   power   := atom ('^' int)?
///   atom    := int | ident | Wn(v, ..) | En(x, y) | '[' sum (',' sum)+ ']' | '(' sum ')'
/// Brackets with more than two entries are left-normed.
/// Throws SyntaxError (with a 0-based position) and UnknownVariableArity.
NcPoly parse_poly(std::string_view text, std::uint32_t p);

/// Representation form: a sum of c * u [a, b] v or c * w, where u, v, w are
/// products of variable powers and a, b single variables. Returns nullopt
/// when the text is a valid polynomial not of that shape.
std::optional<std::vector<ReprTerm>> parse_repr(std::string_view text);

/// "GF(p)" or "GF(p^k)".
FieldSpec parse_field(std::string_view text);

/// "GF(...)" for a finite field, "char(p)" or "infinite(p)" otherwise.
FieldMode parse_mode(std::string_view text);

/// C(N), A(<expr>), A(F), B(q, Q, j), op(<expr>), M(n), F; `field` supplies
/// the base field where the expression leaves it open. Anything else is read
/// as a path to an algebra file.
AlgebraPtr parse_algebra(std::string_view text, const FieldSpec& field);

/// Line-oriented definition:
///   algebra <name> dim <d> field GF(p^k)
///   mul i j -> c1 b1 + c2 b2 + ...
/// Basis indices are 1-based, '#' starts a comment, omitted products are zero.
/// Coefficients are prime-field integers or field literals such as 2t+1.
AlgebraPtr parse_algebra_text(std::string_view text);
AlgebraPtr load_algebra_file(const std::string& path);

/// Comma-separated variable names.
std::vector<Var> parse_var_list(std::string_view text);

}  // namespace pivar
