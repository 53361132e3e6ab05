#include "pivar/certifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pivar {

namespace {

bool is_prime_power(std::uint32_t m) {
  if (m < 2) return false;
  std::uint32_t q = 2;
  while (m % q) ++q;
  while (m % q == 0) m /= q;
  return m == 1;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::optional<NonprimeWitness> factor_member(const NcPoly& f, std::size_t index) {
  if (f.is_zero() || !f.is_multilinear()) return std::nullopt;
  const auto& terms = f.terms();
  const Word& w0 = terms.front().first;
  const std::size_t n = w0.size();

  std::vector<std::size_t> bounds{0};
  for (std::size_t k = 1; k < n; ++k) {
    std::set<Var> s0(w0.begin(), w0.begin() + static_cast<std::ptrdiff_t>(k));
    bool consistent = std::all_of(terms.begin(), terms.end(), [&](const auto& t) {
      return std::set<Var>(t.first.begin(), t.first.begin() + static_cast<std::ptrdiff_t>(k)) == s0;
    });
    if (consistent) bounds.push_back(k);
  }
  bounds.push_back(n);
  if (bounds.size() < 3) return std::nullopt;

  const std::uint32_t p = f.characteristic();
  const FieldSpec F = FieldSpec::make(p);
  const std::uint32_t c0 = terms.front().second, c0inv = F.inv(c0);
  NcPoly product = NcPoly::constant(p, c0);
  NonprimeWitness wit;
  wit.index = index;
  std::uint32_t scalar = c0;
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const auto lo = static_cast<std::ptrdiff_t>(bounds[b]), hi = static_cast<std::ptrdiff_t>(bounds[b + 1]);
    std::vector<NcPoly::Term> seg;
    for (const auto& [w, c] : terms) {
      bool same_outside = std::equal(w.begin(), w.begin() + lo, w0.begin()) &&
                          std::equal(w.begin() + hi, w.end(), w0.begin() + hi);
      if (same_outside) seg.emplace_back(Word(w.begin() + lo, w.begin() + hi), F.mul(c, c0inv));
    }
    NcPoly g = NcPoly::from_terms(p, std::move(seg));
    auto m = match_lie_word(g);
    if (!m || m->second.size() < 2) return std::nullopt;
    scalar = F.mul(scalar, m->first);
    wit.factors.push_back(m->second);
    product = product * g;
  }
  if (product != f) return std::nullopt;
  wit.scalar = scalar;
  return wit;
}

struct EngelMember {
  std::size_t index;
  Var x, y;
  std::uint32_t n;
};

std::optional<EngelMember> engel_member(const IdentitySystem& sigma) {
  const std::uint32_t p = sigma.characteristic();
  for (std::size_t i = 0; i < sigma.polys.size(); ++i) {
    const NcPoly& f = sigma.polys[i];
    auto vs = f.variables();
    if (vs.size() != 2 || f.degree() < 2) continue;
    std::uint32_t n = static_cast<std::uint32_t>(f.degree() - 1), m = n;
    while (m % p == 0) m /= p;
    if (m != 1) continue;
    std::vector<Var> v(vs.begin(), vs.end());
    for (int order = 0; order < 2; ++order) {
      Var x = v[order], y = v[1 - order];
      NcPoly c = commutator(NcPoly::variable(p, x), pow(NcPoly::variable(p, y), n));
      for (std::uint32_t s = 1; s < p; ++s)
        if (f == c.scaled(s)) return EngelMember{i, x, y, n};
    }
  }
  return std::nullopt;
}

Matrix ad_matrix(const StructAlgebra& a, const Vec& y) {
  const std::size_t n = a.dim();
  const FieldSpec& F = a.field();
  Matrix ad(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    Vec ey = a.multiply(e, y), ye = a.multiply(y, e);
    for (std::size_t k = 0; k < n; ++k) ad[i][k] = F.sub(ey[k], ye[k]);
  }
  return ad;
}

// Rejects a non-Engel algebra through a member c*[x, y^(p^t)].
std::optional<CheckVerdict> engel_shortcut(const AlgebraPtr& a, const IdentitySystem& sigma, const EngelMember& m,
                                           Semantics semantics, std::uint64_t budget) {
  CheckVerdict e = is_engel(a, budget);
  if (!e.no()) return std::nullopt;
  const AlgElem& y = e.witness->assignment.at(var("y"));
  Matrix power = mat_pow(a->field(), ad_matrix(*a, y.coords), m.n);
  for (std::size_t i = 0; i < a->dim(); ++i) {
    if (std::all_of(power[i].begin(), power[i].end(), [](std::uint32_t v) { return v == 0; })) continue;
    Witness w;
    w.assignment[m.x] = basis_element(a, static_cast<std::uint32_t>(i));
    w.assignment[m.y] = y;
    w.value = evaluate_poly(sigma.polys[m.index], a, w.assignment);
    if (w.value.is_zero()) return std::nullopt;
    CheckVerdict v;
    v.holds = Holds::No;
    v.semantics = semantics;
    v.method = "engel-shortcut";
    v.evaluations = e.evaluations;
    v.failing = sigma.polys[m.index];
    v.failing_index = m.index;
    v.witness = std::move(w);
    v.note = "ad(y) is not nilpotent, so no identity [x, y^" + std::to_string(m.n) + "] holds";
    return v;
  }
  return std::nullopt;
}

std::string chain_text(const LieChain& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.dims.size(); ++i) os << (i ? "," : "") << c.dims[i];
  return os.str();
}

}  // namespace

std::string FieldMode::to_string() const {
  if (kind == Kind::Finite) return "finite " + field.name();
  return "infinite char " + std::to_string(characteristic());
}

std::string NonprimeWitness::to_string() const {
  if (asserted) return "asserted by the user";
  std::ostringstream os;
  os << "member " << index + 1 << " = ";
  if (scalar != 1) os << scalar << "*";
  for (const auto& f : factors) {
    os << "W" << f.size() << "(";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << var_name(f[i]);
    os << ")";
  }
  os << " (s=" << factors.size() << ", n=(";
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i].size();
  os << "))";
  return os.str();
}

std::optional<std::pair<std::uint32_t, std::vector<Var>>> match_lie_word(const NcPoly& g) {
  if (g.is_zero() || !g.is_multilinear()) return std::nullopt;
  const std::uint32_t p = g.characteristic();
  auto vars = g.variables();
  if (vars.size() == 1) {
    const auto& [w, c] = g.terms().front();
    return std::make_pair(c, std::vector<Var>{w.front()});
  }
  // Later names first: [a,b] reads as W2(a,b).
  std::vector<Var> order(vars.begin(), vars.end());
  std::sort(order.begin(), order.end(), [](Var a, Var b) { return var_name(a) > var_name(b); });
  for (Var v : order) {
    std::vector<NcPoly::Term> stripped;
    for (const auto& [w, c] : g.terms())
      if (w.back() == v) stripped.emplace_back(Word(w.begin(), w.end() - 1), c);
    NcPoly h = NcPoly::from_terms(p, std::move(stripped));
    if (h.is_zero() || commutator(h, NcPoly::variable(p, v)) != g) continue;
    if (auto r = match_lie_word(h)) {
      r->second.push_back(v);
      return r;
    }
  }
  return std::nullopt;
}

std::optional<NonprimeWitness> find_nonprime_witness(const IdentitySystem& sigma) {
  for (std::size_t i = 0; i < sigma.polys.size(); ++i)
    if (auto w = factor_member(sigma.polys[i], i)) return w;
  return std::nullopt;
}

std::optional<std::size_t> find_engel_member(const IdentitySystem& sigma) {
  if (auto m = engel_member(sigma)) return m->index;
  return std::nullopt;
}

std::vector<CatalogAlgebra> catalog(const FieldMode& mode, std::uint32_t truncation, std::uint32_t ext_bound) {
  const FieldSpec F = mode.field;
  std::vector<CatalogAlgebra> out;
  auto ac = make_A(make_C(truncation, F));
  if (mode.kind == FieldMode::Kind::Finite) {
    auto af = make_A(field_algebra(F));
    out.push_back({"A(F)", af});
    out.push_back({"A(F)*", opposite(af)});
  }
  out.push_back({"A(C)", ac});
  out.push_back({"A(C)*", opposite(ac)});
  if (mode.kind == FieldMode::Kind::Finite) {
    const std::uint32_t p = F.characteristic();
    for (std::uint32_t m = 2; m <= ext_bound; ++m) {
      if (!is_prime_power(m)) continue;
      std::uint64_t order = 1;
      const std::uint32_t kg = F.degree() * m;
      for (std::uint32_t i = 0; i < kg && order <= kDefaultFieldCap; ++i) order *= p;
      if (order > kDefaultFieldCap) continue;
      FieldSpec G = FieldSpec::make(p, kg);
      for (std::uint32_t j : valid_sigmas(F, G)) out.push_back({"B(F,G,sigma)", make_B(F, G, j)});
    }
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NotLieNilpotent: return "NOT_LIE_NILPOTENT";
    case Verdict::LieNilpotent: return "LIE_NILPOTENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Certificate certify(const FieldMode& mode, const IdentitySystem& sigma, const CertBounds& bounds,
                    bool assume_nonprime) {
  if (sigma.characteristic() != mode.characteristic()) {
    throw Error(ErrorKind::CharMismatch, "identities over GF(" + std::to_string(sigma.characteristic()) +
                                             ") but mode is " + mode.to_string());
  }
  Certificate cert;
  cert.mode = mode;
  cert.sigma = sigma.polys;
  cert.bounds = bounds;
  const auto maxdeg = static_cast<std::uint32_t>(std::max(sigma.max_degree(), 1));
  if (cert.bounds.truncation == 0) cert.bounds.truncation = maxdeg;
  if (cert.bounds.truncation < maxdeg) {
    throw Error(ErrorKind::CapExceeded, "truncation " + std::to_string(cert.bounds.truncation) +
                                            " is below the system degree " + std::to_string(maxdeg));
  }
  if (cert.bounds.truncation > kMaxCGenerators) {
    throw Error(ErrorKind::CapExceeded, "truncation " + std::to_string(cert.bounds.truncation) + " exceeds " +
                                            std::to_string(kMaxCGenerators));
  }
  const std::uint32_t N = cert.bounds.truncation;

  cert.nonprime = find_nonprime_witness(sigma);
  if (!cert.nonprime && assume_nonprime) {
    NonprimeWitness w;
    w.asserted = true;
    cert.nonprime = w;
  }

  const Semantics sem = mode.semantics();
  auto engel = engel_member(sigma);
  std::optional<std::string> ac_evidence;
  for (auto& entry : catalog(mode, N, cert.bounds.ext_bound)) {
    CatalogResult r{entry, {}, {}};
    const bool non_engel_member = entry.tag == "A(F)" || entry.tag == "A(F)*" || entry.tag == "B(F,G,sigma)";
    std::optional<CheckVerdict> v;
    if (engel && non_engel_member) v = engel_shortcut(entry.algebra, sigma, *engel, sem, cert.bounds.budget);
    r.verdict = v ? *v : satisfies_system(entry.algebra, sigma, sem, cert.bounds.budget);
    if (entry.tag == "A(C)" || entry.tag == "A(C)*") {
      if (!ac_evidence) {
        std::ostringstream os;
        os << "A(C) is not Lie nilpotent; Lie classes of A(C_n) for n=1..";
        const std::uint32_t top = std::min<std::uint32_t>(N, 4);
        os << top << ":";
        for (std::uint32_t n = 1; n <= top; ++n) {
          auto ch = lie_lower_chain(make_A(make_C(n, mode.field)));
          os << " " << (ch.nilpotency_class ? std::to_string(*ch.nilpotency_class) : "none");
        }
        ac_evidence = os.str();
      }
      r.evidence = *ac_evidence;
    } else {
      auto ch = lie_lower_chain(entry.algebra);
      r.evidence = ch.nilpotency_class ? "lower Lie chain " + chain_text(ch) + " reaches 0"
                                       : "lower Lie chain " + chain_text(ch) + " stabilizes at dimension " +
                                             std::to_string(ch.dims.back());
    }
    cert.catalog.push_back(std::move(r));
  }

  cert.hypotheses.push_back("identities of degree <= " + std::to_string(N) + " are tested on A(C) through the truncation A(C_" +
                            std::to_string(N) + ")");
  if (mode.kind == FieldMode::Kind::Finite) {
    cert.hypotheses.push_back("B(F,G,sigma) swept over prime-power [G:F] <= " +
                              std::to_string(cert.bounds.ext_bound));
  }

  for (const auto& r : cert.catalog) {
    if (r.verdict.yes()) {
      cert.verdict = Verdict::NotLieNilpotent;
      cert.reason = r.entry.algebra->name() + " [" + r.entry.tag + "] satisfies every identity and is not Lie nilpotent";
      return cert;
    }
  }

  std::vector<std::string> blockers;
  if (!cert.nonprime) {
    blockers.push_back("no non-primeness witness (prime varieties are outside the classification)");
  }
  for (const auto& r : cert.catalog)
    if (r.verdict.holds == Holds::BudgetExceeded) blockers.push_back("budget exhausted on " + r.entry.algebra->name());
  if (mode.kind == FieldMode::Kind::Finite) {
    for (std::uint32_t m = 2; m <= cert.bounds.ext_bound; ++m) {
      if (!is_prime_power(m)) continue;
      std::uint64_t order = 1;
      for (std::uint32_t i = 0; i < mode.field.degree() * m && order <= kDefaultFieldCap; ++i)
        order *= mode.characteristic();
      if (order > kDefaultFieldCap) {
        blockers.push_back("extension degree " + std::to_string(m) + " exceeds the field cap");
        break;
      }
    }
  }
  if (blockers.empty()) {
    cert.verdict = Verdict::LieNilpotent;
    cert.reason = "no catalog algebra satisfies the system and the variety is not verbally prime";
    cert.hypotheses.push_back("the catalog classifies non-prime almost Lie nilpotent varieties; non-primeness: " +
                              cert.nonprime->to_string());
  } else {
    cert.verdict = Verdict::Inconclusive;
    cert.reason = join(blockers, "; ");
  }
  return cert;
}

}  // namespace pivar
