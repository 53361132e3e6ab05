#include "pivar/report.hpp"

#include <algorithm>
#include <sstream>

namespace pivar {

namespace {

template <class Range, class Fn>
std::string joined(const Range& r, const std::string& sep, Fn fn) {
  std::string out;
  bool first = true;
  for (const auto& x : r) {
    if (!first) out += sep;
    out += fn(x);
    first = false;
  }
  return out;
}

std::string chain_dims(const LieChain& c) {
  return joined(c.dims, ",", [](std::size_t d) { return std::to_string(d); });
}

std::string verdict_word(const CheckVerdict& v) {
  switch (v.holds) {
    case Holds::Yes: return "HOLDS";
    case Holds::No: return "FAILS";
    case Holds::BudgetExceeded: return "BUDGET-EXCEEDED";
  }
  return "BUDGET-EXCEEDED";
}

std::string algebra_line(const AlgebraPtr& a) {
  return a->name() + " over " + a->field().name() + ", dim " + std::to_string(a->dim());
}

void failure_lines(std::ostringstream& os, const CheckVerdict& v, bool system) {
  if (!v.no()) return;
  if (system) os << "failing member: " << v.failing_index + 1 << "\n";
  if (v.failing) os << "failing polynomial: " << v.failing->to_string() << "\n";
  if (v.witness) os << "witness: " << v.witness->to_string() << "\n";
}

std::string witness_cell(const CheckVerdict& v) {
  if (!v.no() || !v.witness) return "-";
  return v.witness->to_string();
}

}  // namespace

std::string machine_line(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += k + '=';
    bool quote = v.empty() || v.find_first_of(" \t\"=") != std::string::npos;
    if (!quote) {
      out += v;
      continue;
    }
    out += '"';
    for (char c : v) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  return out + "\n";
}

std::string format_degree_sets(const DegreeSets& ds) {
  std::ostringstream os;
  os << "S={" << joined(ds.S, ",", [](std::uint32_t s) { return std::to_string(s); }) << "}\n";
  if (ds.D) {
    os << "D={" << joined(*ds.D, ",", [](const auto& pr) {
      return "(" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ")";
    }) << "}\n";
  } else {
    os << "D=undefined (the representation has a term without a commutator)\n";
  }
  return os.str();
}

KeyValues degree_sets_kv(const DegreeSets& ds) {
  KeyValues kv{{"command", "degree-sets"},
               {"S", joined(ds.S, ",", [](std::uint32_t s) { return std::to_string(s); })}};
  kv.emplace_back("D", ds.D ? joined(*ds.D, ";",
                                     [](const auto& pr) {
                                       return std::to_string(pr.first) + "," + std::to_string(pr.second);
                                     })
                            : "undefined");
  return kv;
}

std::string format_chain(const AlgebraPtr& a, const LieChain& c) {
  std::ostringstream os;
  os << "algebra: " << algebra_line(a) << "\n";
  if (c.nilpotency_class) {
    os << "lie nilpotent, class " << *c.nilpotency_class << ", chain " << chain_dims(c) << "\n";
  } else {
    os << "NOT lie nilpotent, chain " << chain_dims(c) << "\n";
    os << "stable term: dimension " << c.dims.back() << ", basis "
       << joined(c.stable, "; ", [&](const Vec& v) { return AlgElem{a, v}.to_string(); }) << "\n";
  }
  return os.str();
}

KeyValues chain_kv(const AlgebraPtr& a, const LieChain& c) {
  return {{"command", "lie-nilpotent"},
          {"algebra", a->name()},
          {"field", a->field().name()},
          {"lie_nilpotent", c.nilpotency_class ? "yes" : "no"},
          {"class", c.nilpotency_class ? std::to_string(*c.nilpotency_class) : "none"},
          {"chain", chain_dims(c)}};
}

std::string format_check(const AlgebraPtr& a, const IdentitySystem& sigma, const CheckVerdict& v,
                         std::uint64_t budget) {
  std::ostringstream os;
  os << "algebra: " << algebra_line(a) << "\n";
  os << "semantics: " << to_string(v.semantics) << "\n";
  os << "identities:\n";
  for (std::size_t i = 0; i < sigma.polys.size(); ++i) os << "  " << i + 1 << ". " << sigma.polys[i].to_string() << "\n";
  os << "result: " << verdict_word(v) << "\n";
  os << "method: " << v.method << ", evaluations " << v.evaluations << "\n";
  failure_lines(os, v, sigma.polys.size() > 1);
  if (!v.note.empty()) os << "note: " << v.note << "\n";
  os << "budget: " << budget << "\n";
  return os.str();
}

KeyValues check_kv(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget) {
  KeyValues kv{{"command", "check-identity"},   {"algebra", a->name()},
               {"field", a->field().name()},    {"semantics", std::string(to_string(v.semantics))},
               {"holds", std::string(to_string(v.holds))}, {"method", v.method},
               {"evaluations", std::to_string(v.evaluations)}};
  if (v.no()) {
    kv.emplace_back("failing_index", std::to_string(v.failing_index + 1));
    if (v.witness) kv.emplace_back("witness", v.witness->to_string());
  }
  kv.emplace_back("budget", std::to_string(budget));
  return kv;
}

std::string format_engel(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget) {
  std::ostringstream os;
  os << "algebra: " << algebra_line(a) << "\n";
  switch (v.holds) {
    case Holds::Yes: os << "Engel: every ad(y) is nilpotent\n"; break;
    case Holds::No: os << "NOT Engel\n"; break;
    case Holds::BudgetExceeded: os << "Engel: BUDGET-EXCEEDED\n"; break;
  }
  os << "method: " << v.method << ", evaluations " << v.evaluations << "\n";
  failure_lines(os, v, false);
  if (!v.note.empty()) os << "note: " << v.note << "\n";
  os << "budget: " << budget << "\n";
  return os.str();
}

KeyValues engel_kv(const AlgebraPtr& a, const CheckVerdict& v, std::uint64_t budget) {
  KeyValues kv{{"command", "engel"}, {"algebra", a->name()}, {"field", a->field().name()},
               {"engel", std::string(to_string(v.holds))}, {"method", v.method}};
  if (v.no() && v.witness) kv.emplace_back("witness", v.witness->to_string());
  kv.emplace_back("budget", std::to_string(budget));
  return kv;
}

std::string format_membership(const NcPoly& f, const std::vector<NcPoly>& gens, TMode mode, std::uint32_t bound,
                              const MembershipResult& r) {
  std::ostringstream os;
  os << "target: " << f.to_string() << "\n";
  os << "generators:\n";
  for (std::size_t i = 0; i < gens.size(); ++i) os << "  " << i + 1 << ". " << gens[i].to_string() << "\n";
  os << "mode: " << to_string(mode) << ", degree " << r.degree << ", bound " << bound << "\n";
  os << "span: rank " << r.rank << " of " << r.generated << " generated rows, " << r.columns << " columns\n";
  if (r.member) {
    os << "MEMBER\n";
    os << "certificate (" << r.certificate->terms.size() << " rows):\n";
    for (const auto& [c, o] : r.certificate->terms) os << "  " << c << " * [" << o.to_string() << "]\n";
  } else {
    os << "NOT IN SPAN at degree " << r.degree << "\n";
  }
  return os.str();
}

KeyValues membership_kv(TMode mode, std::uint32_t bound, const MembershipResult& r) {
  return {{"command", "tideal-member"},
          {"mode", std::string(to_string(mode))},
          {"bound", std::to_string(bound)},
          {"degree", std::to_string(r.degree)},
          {"member", r.member ? "yes" : "no"},
          {"rank", std::to_string(r.rank)},
          {"generated", std::to_string(r.generated)},
          {"columns", std::to_string(r.columns)},
          {"certificate_rows", std::to_string(r.certificate ? r.certificate->terms.size() : 0)}};
}

std::string format_certificate(const Certificate& c) {
  std::ostringstream os;
  os << "MODE\n  " << c.mode.to_string() << " (semantics " << to_string(c.mode.semantics()) << ")\n";
  os << "SIGMA\n";
  for (std::size_t i = 0; i < c.sigma.size(); ++i) {
    os << "  " << i + 1 << ". " << c.sigma[i].to_string() << "   [degree " << c.sigma[i].degree() << "]\n";
  }
  os << "NONPRIME-WITNESS\n  " << (c.nonprime ? c.nonprime->to_string() : "none found") << "\n";

  os << "CATALOG\n";
  std::vector<std::vector<std::string>> rows{{"algebra", "tag", "verdict", "method", "witness"}};
  for (const auto& r : c.catalog) {
    std::string verdict = r.verdict.yes()  ? "satisfies"
                          : r.verdict.no() ? "violates " + std::to_string(r.verdict.failing_index + 1)
                                           : "budget-exceeded";
    rows.push_back({r.entry.algebra->name(), r.entry.tag, verdict, r.verdict.method, witness_cell(r.verdict)});
  }
  std::vector<std::size_t> width(5, 0);
  for (const auto& row : rows)
    for (std::size_t k = 0; k + 1 < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  for (const auto& row : rows) {
    os << " ";
    for (std::size_t k = 0; k < row.size(); ++k) {
      os << " " << row[k];
      if (k + 1 < row.size()) os << std::string(width[k] - row[k].size() + 1, ' ') << "|";
    }
    os << "\n";
  }
  std::vector<std::string> seen;
  for (const auto& r : c.catalog) {
    if (r.evidence.empty() || std::find(seen.begin(), seen.end(), r.evidence) != seen.end()) continue;
    seen.push_back(r.evidence);
    os << "  * " << (r.entry.tag == "A(C)" || r.entry.tag == "A(C)*" ? "A(C)" : r.entry.algebra->name()) << ": "
       << r.evidence << "\n";
  }
  for (const auto& r : c.catalog)
    if (!r.verdict.note.empty()) os << "  * " << r.entry.algebra->name() << ": " << r.verdict.note << "\n";

  os << "VERDICT\n  " << to_string(c.verdict) << "\n  reason: " << c.reason << "\n";
  for (const auto& h : c.hypotheses) os << "  hypothesis: " << h << "\n";
  os << "BOUNDS\n  truncation=" << c.bounds.truncation << " ext-bound=" << c.bounds.ext_bound
     << " budget=" << c.bounds.budget << "\n";
  return os.str();
}

KeyValues certificate_kv(const Certificate& c) {
  KeyValues kv{{"command", "certify"},
               {"mode", c.mode.to_string()},
               {"verdict", std::string(to_string(c.verdict))},
               {"nonprime", c.nonprime ? (c.nonprime->asserted ? "asserted" : "member" + std::to_string(c.nonprime->index + 1))
                                       : "none"}};
  for (const auto& r : c.catalog) kv.emplace_back(r.entry.algebra->name(), std::string(to_string(r.verdict.holds)));
  kv.emplace_back("truncation", std::to_string(c.bounds.truncation));
  kv.emplace_back("ext_bound", std::to_string(c.bounds.ext_bound));
  kv.emplace_back("budget", std::to_string(c.bounds.budget));
  return kv;
}

}  // namespace pivar
