#pragma once

// Deterministic text reports for the command-line tool and bindings.

#include <string>
#include <utility>
#include <vector>

#include "pivar/certifier.hpp"
#include "pivar/idcheck.hpp"
#include "pivar/tideal.hpp"

namespace pivar {

/// One-line key=value dump; values with spaces or quotes are double-quoted.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
std::string machine_line(const KeyValues& kv);

std::string format_degree_sets(const DegreeSets& ds);
KeyValues degree_sets_kv(const DegreeSets& ds);

std::string format_chain(const AlgebraPtr& a, const LieChain& c);
KeyValues chain_kv(const AlgebraPtr& a, const LieChain& c);

std::string format_check(const AlgebraPtr& a, const IdentitySystem& sigma, const CheckVerdict& v,
                         std::uint64_t budget);
KeyValues check_kv(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget);

std::string format_engel(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget);
KeyValues engel_kv(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget);

std::string format_membership(const NcPoly& f, const std::vector<NcPoly>& gens, TMode mode, std::uint32_t bound,
                              const MembershipResult& r);
KeyValues membership_kv(TMode mode, std::uint32_t bound, const MembershipResult& r);

/// Sections MODE, SIGMA, NONPRIME-WITNESS, CATALOG, VERDICT, BOUNDS.
std::string format_certificate(const Certificate& c);
KeyValues certificate_kv(const Certificate& c);

}  // namespace pivar
