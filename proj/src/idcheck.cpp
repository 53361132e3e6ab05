#include "pivar/idcheck.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pivar {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e && r != UINT64_MAX; ++i) r = sat_mul(r, base);
  return r;
}

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

void check_char(const NcPoly& f, const AlgebraPtr& a) {
  if (f.characteristic() != a->field().characteristic()) {
    throw Error(ErrorKind::CharMismatch, "polynomial over GF(" + std::to_string(f.characteristic()) +
                                             ") evaluated in an algebra over " + a->field().name());
  }
}

Witness make_witness(const AlgebraPtr& a, const std::vector<Var>& vars, const std::vector<Vec>& slots,
                     const Vec& value) {
  Witness w;
  for (std::size_t i = 0; i < vars.size(); ++i) w.assignment[vars[i]] = AlgElem{a, slots[i]};
  w.value = AlgElem{a, value};
  return w;
}

// Steps an odometer of base `base` over the flattened slots; false on wrap-around.
bool advance(std::vector<Vec>& slots, std::uint32_t base) {
  for (auto& s : slots)
    for (auto& d : s) {
      if (++d < base) return true;
      d = 0;
    }
  return false;
}

}  // namespace

IdentitySystem::IdentitySystem(std::vector<NcPoly> ps) : polys(std::move(ps)) {
  if (polys.empty()) throw Error(ErrorKind::ShapeError, "empty identity system");
  for (const auto& f : polys)
    if (f.characteristic() != polys.front().characteristic())
      throw Error(ErrorKind::CharMismatch, "identity system mixes characteristics");
}

int IdentitySystem::max_degree() const {
  int d = 0;
  for (const auto& f : polys) d = std::max(d, f.degree());
  return d;
}

std::string_view to_string(Semantics s) { return s == Semantics::Finite ? "finite-q" : "infinite-char-p"; }

std::string_view to_string(Holds h) {
  switch (h) {
    case Holds::Yes: return "yes";
    case Holds::No: return "no";
    case Holds::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

std::string Witness::to_string() const {
  std::ostringstream os;
  if (concrete()) {
    std::map<std::string, const AlgElem*> by_name;
    for (const auto& [v, e] : assignment) by_name.emplace(var_name(v), &e);
    bool first = true;
    for (const auto& [name, e] : by_name) {
      os << (first ? "" : ", ") << name << "=" << e->to_string();
      first = false;
    }
    os << " -> " << value.to_string();
  } else {
    os << "formal " << formal;
  }
  return os.str();
}

bool recheck(const NcPoly& f, const AlgebraPtr& a, const Witness& w) {
  if (!w.concrete()) return false;
  auto v = evaluate_poly(f, a, w.assignment);
  return !v.is_zero() && v == w.value;
}

CheckVerdict is_identity_exhaustive(const AlgebraPtr& a, const NcPoly& f, std::uint64_t budget) {
  check_char(f, a);
  CheckVerdict out;
  out.semantics = Semantics::Finite;
  out.method = "exhaustive";
  if (f.is_zero() || a->dim() == 0) return out;

  EvalPlan plan(f);
  const auto& vars = plan.variables();
  const std::size_t nv = vars.size(), dim = a->dim();
  const std::uint32_t q = a->field().order();
  std::vector<Vec> slots(nv, Vec(dim, 0));

  auto test_point = [&]() {
    ++out.evaluations;
    Vec r = plan.run_field(*a, slots);
    if (all_zero(r)) return false;
    out.holds = Holds::No;
    out.failing = f;
    out.witness = make_witness(a, vars, slots, r);
    return true;
  };

  // Basis tuples: decisive for multilinear f, a cheap first pass otherwise.
  const bool multilinear = f.is_multilinear();
  if (multilinear) out.method = "multilinear-basis";
  const std::uint64_t basis_tuples = sat_pow(dim, nv);
  if (multilinear || basis_tuples <= budget / 4) {
    std::vector<std::size_t> idx(nv, 0);
    for (;;) {
      if (out.evaluations >= budget) {
        out.holds = Holds::BudgetExceeded;
        return out;
      }
      for (std::size_t v = 0; v < nv; ++v) {
        std::fill(slots[v].begin(), slots[v].end(), 0);
        slots[v][idx[v]] = 1;
      }
      if (test_point()) return out;
      std::size_t v = nv;
      while (v > 0 && ++idx[v - 1] == dim) idx[--v] = 0;
      if (v == 0) break;
    }
    if (multilinear) return out;
  }

  for (auto& s : slots) std::fill(s.begin(), s.end(), 0);
  do {
    if (out.evaluations >= budget) {
      out.holds = Holds::BudgetExceeded;
      return out;
    }
    if (test_point()) return out;
  } while (advance(slots, q));
  return out;
}

namespace {

struct GenericSetup {
  std::vector<Var> vars;
  std::vector<GenericElem> elems;
  // generic variable id -> (variable slot, coordinate)
  std::unordered_map<std::uint32_t, std::pair<std::size_t, std::size_t>> where;
};

std::string formal_text(const AlgebraPtr& a, const GenericSetup& g, std::size_t k, const GenPoly& c) {
  std::ostringstream os;
  os << "coordinate " << a->labels()[k] << " = ";
  std::size_t shown = 0;
  for (const auto& [m, coeff] : c.terms()) {
    if (shown == 6) {
      os << " + ... (" << c.size() << " terms)";
      break;
    }
    if (shown++) os << " + ";
    if (coeff != 1 || m.empty()) os << to_string(Scalar(a->field(), coeff));
    bool first = coeff == 1 && !m.empty();
    for (auto [v, e] : GenPoly::exponents(m)) {
      auto [slot, coord] = g.where.at(v);
      os << (first ? "" : "*") << var_name(g.vars[slot]) << "[" << a->labels()[coord] << "]";
      if (e > 1) os << "^" << e;
      first = false;
    }
  }
  return os.str();
}

}  // namespace

CheckVerdict is_identity_generic(const AlgebraPtr& a, const NcPoly& f, Semantics semantics, std::uint64_t budget,
                                 std::uint64_t seed) {
  check_char(f, a);
  CheckVerdict out;
  out.semantics = semantics;
  out.method = "generic";
  out.evaluations = 1;
  if (f.is_zero() || a->dim() == 0) return out;

  const FieldSpec F = a->field();
  const std::uint32_t q = F.order();
  const std::size_t dim = a->dim();
  GenericPool pool(F);
  GenericSetup g;
  auto fvars = f.variables();
  g.vars.assign(fvars.begin(), fvars.end());
  std::map<Var, GenericElem> asg;
  for (std::size_t s = 0; s < g.vars.size(); ++s) {
    auto e = generic_element(a, pool, var_name(g.vars[s]));
    for (std::size_t i = 0; i < dim; ++i) g.where[e.coords[i].terms().front().first.front()] = {s, i};
    asg[g.vars[s]] = e;
    g.elems.push_back(std::move(e));
  }
  std::optional<std::uint32_t> reduce;
  if (semantics == Semantics::Finite) reduce = q;
  GenericElem r = evaluate_poly(f, a, asg, reduce);

  std::size_t k = 0;
  while (k < dim && r.coords[k].is_zero()) ++k;
  if (k == dim) return out;

  out.holds = Holds::No;
  out.failing = f;

  // Specialize to a field point.
  EvalPlan plan(f);
  std::vector<std::size_t> slot_of(g.vars.size());
  for (std::size_t s = 0; s < g.vars.size(); ++s)
    slot_of[s] = static_cast<std::size_t>(
        std::find(plan.variables().begin(), plan.variables().end(), g.vars[s]) - plan.variables().begin());
  std::vector<Vec> slots(g.vars.size(), Vec(dim, 0));
  std::uint64_t tries = 0;
  auto try_point = [&](const std::unordered_map<std::uint32_t, std::uint32_t>& point) {
    ++tries;
    for (auto& s : slots) std::fill(s.begin(), s.end(), 0);
    for (const auto& [id, val] : point) {
      auto [s, i] = g.where.at(id);
      slots[slot_of[s]][i] = val;
    }
    Vec v = plan.run_field(*a, slots);
    if (all_zero(v)) return false;
    out.witness = make_witness(a, plan.variables(), slots, v);
    return true;
  };

  const GenPoly& c = r.coords[k];
  std::vector<GenMonomial> supports;
  {
    std::set<GenMonomial> seen;
    for (const auto& [m, coeff] : c.terms()) {
      GenMonomial s;
      for (auto [v, e] : GenPoly::exponents(m)) s.push_back(v);
      seen.insert(std::move(s));
    }
    supports.assign(seen.begin(), seen.end());
    std::stable_sort(supports.begin(), supports.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
  }
  const std::uint64_t search_budget = std::max<std::uint64_t>(budget, 1);
  // Minimal supports at 0/1 points, then all nonzero values on small supports.
  for (std::size_t i = 0; i < supports.size() && i < 512 && tries < search_budget; ++i) {
    std::unordered_map<std::uint32_t, std::uint32_t> point;
    for (auto v : supports[i]) point[v] = 1;
    if (try_point(point)) break;
  }
  if (!out.witness && q > 2) {
    for (std::size_t i = 0; i < supports.size() && i < 64 && tries < search_budget; ++i) {
      const auto& s = supports[i];
      if (sat_pow(q - 1, s.size()) > 4096) continue;
      std::vector<std::uint32_t> vals(s.size(), 1);
      bool found = false;
      for (;;) {
        std::unordered_map<std::uint32_t, std::uint32_t> point;
        for (std::size_t j = 0; j < s.size(); ++j) point[s[j]] = vals[j];
        if (try_point(point)) {
          found = true;
          break;
        }
        std::size_t j = 0;
        while (j < s.size() && ++vals[j] == q) vals[j++] = 1;
        if (j == s.size()) break;
      }
      if (found) break;
    }
  }
  if (!out.witness) {
    std::mt19937_64 rng(seed);
    const std::uint64_t limit = std::min<std::uint64_t>(search_budget, 20000);
    for (std::uint64_t t = 0; t < limit && !out.witness; ++t) {
      std::unordered_map<std::uint32_t, std::uint32_t> point;
      for (const auto& [id, loc] : g.where) point[id] = static_cast<std::uint32_t>(rng() % q);
      try_point(point);
    }
  }
  if (!out.witness && semantics == Semantics::Finite) {
    // The reduced coordinate is nonzero, so some point of its variables works.
    std::vector<std::uint32_t> ids;
    for (const auto& s : supports) ids.insert(ids.end(), s.begin(), s.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (sat_pow(q, ids.size()) <= search_budget) {
      std::vector<std::uint32_t> vals(ids.size(), 0);
      std::unordered_map<std::uint32_t, std::uint32_t> point;
      for (;;) {
        for (std::size_t j = 0; j < ids.size(); ++j) point[ids[j]] = vals[j];
        if (c.evaluate(point) != 0) {
          try_point(point);
          break;
        }
        std::size_t j = 0;
        while (j < ids.size() && ++vals[j] == q) vals[j++] = 0;
        if (j == ids.size()) break;
      }
    }
  }
  out.evaluations += tries;
  if (!out.witness) {
    Witness w;
    w.formal = formal_text(a, g, k, c);
    w.value = AlgElem{a, Vec(dim, 0)};
    out.witness = std::move(w);
  }
  return out;
}

LieChain lie_lower_chain(const AlgebraPtr& a) {
  const FieldSpec F = a->field();
  const std::size_t n = a->dim();
  LieChain chain;
  std::vector<Vec> current;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    current.push_back(std::move(e));
  }
  chain.dims.push_back(n);
  if (n == 0) {
    chain.nilpotency_class = 1;
    return chain;
  }
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(current[i]);
  for (;;) {
    EchelonBasis next(F, n);
    for (const auto& l : current)
      for (const auto& b : basis) {
        Vec lb = a->multiply(l, b), bl = a->multiply(b, l);
        for (std::size_t k = 0; k < n; ++k) lb[k] = F.sub(lb[k], bl[k]);
        next.add(lb);
      }
    chain.dims.push_back(next.rank());
    if (next.rank() == 0) {
      chain.nilpotency_class = chain.dims.size();
      return chain;
    }
    if (next.rank() == current.size()) {
      chain.stable = next.rows();
      return chain;
    }
    current = next.rows();
  }
}

CheckVerdict is_engel(const AlgebraPtr& a, std::uint64_t budget) {
  CheckVerdict out;
  out.semantics = Semantics::Finite;
  out.method = "ad-nilpotency";
  const FieldSpec F = a->field();
  const std::size_t n = a->dim();
  if (n == 0) return out;
  const std::uint32_t p = F.characteristic(), q = F.order();
  const Var xv = var("x"), yv = var("y");
  NcPoly engel = engel_polynomial(p, static_cast<std::uint32_t>(n), xv, yv).closed;

  auto check_y = [&](const Vec& y) {
    ++out.evaluations;
    Matrix ad(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, 0);
      e[i] = 1;
      Vec ey = a->multiply(e, y), ye = a->multiply(y, e);
      for (std::size_t k = 0; k < n; ++k) ad[i][k] = F.sub(ey[k], ye[k]);
    }
    Matrix power = mat_pow(F, ad, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (all_zero(power[i])) continue;
      Witness w;
      w.assignment[xv] = basis_element(a, static_cast<std::uint32_t>(i));
      w.assignment[yv] = AlgElem{a, y};
      w.value = evaluate_poly(engel, a, w.assignment);
      out.holds = Holds::No;
      out.failing = engel;
      out.witness = std::move(w);
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    Vec y(n, 0);
    y[i] = 1;
    if (check_y(y)) return out;
  }
  std::vector<Vec> y(1, Vec(n, 0));
  while (advance(y, q)) {
    if (out.evaluations >= budget) {
      out.holds = Holds::BudgetExceeded;
      return out;
    }
    if (check_y(y[0])) return out;
  }
  return out;
}

CheckVerdict satisfies_system(const AlgebraPtr& a, const IdentitySystem& sigma, Semantics semantics,
                              std::uint64_t budget) {
  if (sigma.characteristic() != a->field().characteristic()) {
    throw Error(ErrorKind::CharMismatch, "identity system characteristic differs from " + a->field().name());
  }
  CheckVerdict total;
  total.semantics = semantics;
  std::vector<std::string> methods;
  const std::uint64_t q = a->field().order(), dim = a->dim();
  for (std::size_t idx = 0; idx < sigma.polys.size(); ++idx) {
    const NcPoly& f = sigma.polys[idx];
    const std::uint64_t nv = f.variables().size();
    CheckVerdict v;
    if (f.is_multilinear() && sat_pow(dim, nv) <= budget) {
      v = is_identity_exhaustive(a, f, budget);
      v.semantics = semantics;
    } else if (semantics == Semantics::Finite && sat_pow(q, sat_mul(dim, nv)) <= budget) {
      v = is_identity_exhaustive(a, f, budget);
    } else {
      v = is_identity_generic(a, f, semantics, budget);
    }
    total.evaluations += v.evaluations;
    methods.push_back(v.method);
    if (!v.yes()) {
      v.evaluations = total.evaluations;
      v.failing_index = idx;
      return v;
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < methods.size(); ++i) os << (i ? "," : "") << methods[i];
  total.method = os.str();
  return total;
}

}  // namespace pivar
