#include "pivar/ncpoly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace pivar {

namespace {

struct Registry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, Var> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (auto v : w) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::uint32_t reduce(std::int64_t c, std::uint32_t p) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

}  // namespace

Var var(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  auto it = r.ids.find(std::string(name));
  if (it != r.ids.end()) return it->second;
  Var id = static_cast<Var>(r.names.size());
  r.names.emplace_back(name);
  r.ids.emplace(std::string(name), id);
  return id;
}

const std::string& var_name(Var v) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  return r.names.at(v);
}

std::vector<Var> var_range(std::string_view prefix, std::size_t n, std::size_t first) {
  std::vector<Var> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(var(std::string(prefix) + std::to_string(first + i)));
  return out;
}

Multidegree multidegree(const Word& w) {
  Multidegree m;
  for (auto v : w) ++m[v];
  return m;
}

NcPoly::NcPoly(std::uint32_t p) : p_(p) {}

NcPoly NcPoly::variable(std::uint32_t p, Var x) { return word(p, Word{x}); }

NcPoly NcPoly::word(std::uint32_t p, Word w, std::int64_t coeff) {
  NcPoly f(p);
  if (auto c = reduce(coeff, p)) f.terms_.emplace_back(std::move(w), c);
  return f;
}

NcPoly NcPoly::constant(std::uint32_t p, std::int64_t c) { return word(p, Word{}, c); }

NcPoly NcPoly::from_terms(std::uint32_t p, std::vector<Term> terms) {
  NcPoly f(p);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return WordLess{}(a.first, b.first); });
  for (auto& [w, c] : terms) {
    c %= p;
    if (!f.terms_.empty() && f.terms_.back().first == w) {
      f.terms_.back().second = (f.terms_.back().second + c) % p;
      if (!f.terms_.back().second) f.terms_.pop_back();
    } else if (c) {
      f.terms_.emplace_back(std::move(w), c);
    }
  }
  return f;
}

void NcPoly::check_char(const NcPoly& o) const {
  if (p_ != o.p_) {
    throw Error(ErrorKind::CharMismatch, "characteristics " + std::to_string(p_) + " and " +
                                             std::to_string(o.p_) + " differ");
  }
}

std::uint32_t NcPoly::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& x) { return WordLess{}(t.first, x); });
  return (it != terms_.end() && it->first == w) ? it->second : 0;
}

int NcPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.size());
}

std::set<Var> NcPoly::variables() const {
  std::set<Var> s;
  for (const auto& t : terms_) s.insert(t.first.begin(), t.first.end());
  return s;
}

bool NcPoly::is_multilinear() const {
  auto vars = variables();
  for (const auto& [w, c] : terms_) {
    if (w.size() != vars.size()) return false;
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  return true;
}

bool NcPoly::is_homogeneous() const {
  return terms_.empty() || terms_.front().first.size() == terms_.back().first.size();
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  check_char(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  WordLess less;
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && less(i->first, j->first))) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || less(j->first, i->first)) {
      out.push_back(*j++);
    } else {
      std::uint32_t c = (i->second + j->second) % p_;
      if (c) out.emplace_back(std::move(i->first), c);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

NcPoly NcPoly::operator-() const {
  NcPoly r = *this;
  for (auto& t : r.terms_) t.second = p_ - t.second;
  return r;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) { return *this += -o; }

NcPoly NcPoly::scaled(std::int64_t c) const {
  NcPoly r(p_);
  std::uint32_t k = reduce(c, p_);
  if (!k) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = static_cast<std::uint32_t>(std::uint64_t{t.second} * k % p_);
  return r;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  a.check_char(b);
  std::unordered_map<Word, std::uint32_t, WordHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      auto& slot = acc[std::move(w)];
      slot = static_cast<std::uint32_t>((slot + std::uint64_t{ca} * cb) % a.p_);
    }
  }
  std::vector<NcPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc)
    if (c) terms.emplace_back(w, c);
  return NcPoly::from_terms(a.p_, std::move(terms));
}

NcPoly& NcPoly::operator*=(const NcPoly& o) { return *this = *this * o; }

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Printing order is by names so reports do not depend on interning order.
  std::vector<std::pair<std::vector<std::string>, const Term*>> keyed;
  for (const auto& t : terms_) {
    std::vector<std::string> names;
    for (auto v : t.first) names.push_back(var_name(v));
    keyed.emplace_back(std::move(names), &t);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [names, t] : keyed) {
    std::uint32_t c = t->second;
    bool negative = p_ > 2 && c == p_ - 1;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (negative) c = 1;
    const Word& w = t->first;
    if (w.empty()) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (i) os << '*';
      os << names[i];
      if (j - i > 1) os << '^' << (j - i);
      i = j;
    }
  }
  return os.str();
}

NcPoly pow(const NcPoly& f, std::uint32_t e) {
  if (e == 0) throw Error(ErrorKind::BadArity, "zero power is the unit, which identities never use");
  NcPoly r = f;
  for (std::uint32_t i = 1; i < e; ++i) r = r * f;
  return r;
}

NcPoly commutator(const NcPoly& f, const NcPoly& g) { return f * g - g * f; }

NcPoly lie_word(std::uint32_t p, std::span<const Var> vars) {
  if (vars.size() < 2 || vars.size() > kMaxLieWordLength) {
    throw Error(ErrorKind::BadArity, "W_n needs 2 <= n <= " + std::to_string(kMaxLieWordLength) +
                                         ", got n = " + std::to_string(vars.size()));
  }
  std::set<Var> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) throw Error(ErrorKind::BadArity, "W_n needs distinct variables");
  NcPoly w = NcPoly::variable(p, vars[0]);
  for (std::size_t i = 1; i < vars.size(); ++i) w = commutator(w, NcPoly::variable(p, vars[i]));
  return w;
}

EngelForms engel_polynomial(std::uint32_t p, std::uint32_t n, Var x, Var y) {
  if (n < 1 || n + 1 > kMaxLieWordLength) throw Error(ErrorKind::BadArity, "Engel degree out of range");
  if (x == y) throw Error(ErrorKind::BadArity, "Engel polynomial needs two distinct variables");

  auto slots = var_range("__engel", n + 1);
  std::map<Var, NcPoly> assign;
  assign.emplace(slots[0], NcPoly::variable(p, x));
  for (std::uint32_t i = 1; i <= n; ++i) assign.emplace(slots[i], NcPoly::variable(p, y));
  NcPoly recursive = substitute(lie_word(p, slots), assign);

  // Binomial coefficients modulo p by Pascal's rule.
  std::vector<std::uint32_t> binom{1};
  for (std::uint32_t r = 1; r <= n; ++r) {
    std::vector<std::uint32_t> next(r + 1, 1);
    for (std::uint32_t k = 1; k < r; ++k) next[k] = (binom[k - 1] + binom[k]) % p;
    binom = std::move(next);
  }
  std::vector<NcPoly::Term> terms;
  for (std::uint32_t k = 0; k <= n; ++k) {
    Word w(k, y);
    w.push_back(x);
    w.insert(w.end(), n - k, y);
    std::int64_t c = (k % 2 ? -1 : 1) * static_cast<std::int64_t>(binom[k]);
    terms.emplace_back(std::move(w), reduce(c, p));
  }
  return {std::move(recursive), NcPoly::from_terms(p, std::move(terms))};
}

NcPoly substitute(const NcPoly& f, const std::map<Var, NcPoly>& assignment) {
  const std::uint32_t p = f.characteristic();
  for (const auto& [v, g] : assignment) {
    if (g.characteristic() != p) throw Error(ErrorKind::CharMismatch, "substitution over another field");
  }
  NcPoly out(p);
  std::map<Var, NcPoly> images;
  for (const auto& [w, c] : f.terms()) {
    NcPoly prod = NcPoly::constant(p, c);
    for (Var v : w) {
      auto it = assignment.find(v);
      prod = prod * (it == assignment.end() ? NcPoly::variable(p, v) : it->second);
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

std::vector<std::pair<Multidegree, NcPoly>> multihomogeneous_components(const NcPoly& f) {
  std::map<Multidegree, std::vector<NcPoly::Term>> parts;
  for (const auto& t : f.terms()) parts[multidegree(t.first)].push_back(t);
  std::vector<std::pair<Multidegree, NcPoly>> out;
  for (auto& [md, terms] : parts) out.emplace_back(md, NcPoly::from_terms(f.characteristic(), std::move(terms)));
  return out;
}

NcPoly full_linearization(const NcPoly& f, const std::set<Var>& targets) {
  const std::uint32_t p = f.characteristic();
  std::set<std::string> taken;
  for (Var v : f.variables()) taken.insert(var_name(v));

  NcPoly current = f;
  for (Var x : targets) {
    std::set<std::size_t> degs;
    for (const auto& [w, c] : current.terms()) degs.insert(static_cast<std::size_t>(std::count(w.begin(), w.end(), x)));
    if (degs.size() > 1) {
      throw Error(ErrorKind::NotHomogeneous, "not homogeneous in " + var_name(x));
    }
    std::size_t d = degs.empty() ? 0 : *degs.begin();
    if (d <= 1) continue;

    std::string sep = "_";
    const std::string& base = var_name(x);
    auto clashes = [&] {
      for (std::size_t i = 1; i <= d; ++i)
        if (taken.count(base + sep + std::to_string(i))) return true;
      return false;
    };
    while (clashes()) sep += "_";
    std::vector<Var> fresh;
    for (std::size_t i = 1; i <= d; ++i) {
      fresh.push_back(var(base + sep + std::to_string(i)));
      taken.insert(var_name(fresh.back()));
    }

    std::vector<NcPoly::Term> terms;
    std::vector<std::size_t> perm(d);
    for (const auto& [w, c] : current.terms()) {
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == x) positions.push_back(i);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Word nw = w;
        for (std::size_t i = 0; i < d; ++i) nw[positions[i]] = fresh[perm[i]];
        terms.emplace_back(std::move(nw), c);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    current = NcPoly::from_terms(p, std::move(terms));
  }
  return current;
}

NcPoly denote(std::uint32_t p, std::span<const ReprTerm> rep) {
  NcPoly out(p);
  for (const auto& t : rep) {
    if (t.kind == ReprTerm::Kind::Plain) {
      out += NcPoly::word(p, t.left, t.coeff);
    } else {
      NcPoly bracket = commutator(NcPoly::variable(p, t.i), NcPoly::variable(p, t.j));
      out += (NcPoly::word(p, t.left, t.coeff) * bracket) * NcPoly::word(p, t.right);
    }
  }
  return out;
}

namespace {

std::uint32_t count(const Word& w, Var v) {
  return static_cast<std::uint32_t>(std::count(w.begin(), w.end(), v));
}

void check_term(const ReprTerm& t) {
  if (t.kind == ReprTerm::Kind::Comm && t.i == t.j) {
    throw Error(ErrorKind::MalformedRepresentation, "commutator [" + var_name(t.i) + "," + var_name(t.j) +
                                                        "] has equal slots");
  }
}

}  // namespace

std::set<std::pair<std::uint32_t, std::uint32_t>> bilateral_degrees(std::span<const ReprTerm> rep,
                                                                    const std::set<Var>& vars) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> D;
  for (const auto& t : rep) {
    check_term(t);
    if (t.kind != ReprTerm::Kind::Comm) {
      throw Error(ErrorKind::MalformedRepresentation, "bilateral degrees need commutator monomials only");
    }
    for (Var u : vars) {
      std::uint32_t k = count(t.left, u), l = count(t.right, u);
      if (u == t.i || u == t.j) {
        D.emplace(k + 1, l);
        D.emplace(k, l + 1);
      } else {
        D.emplace(k, l);
      }
    }
  }
  return D;
}

DegreeSets degree_sets(std::span<const ReprTerm> rep, const std::set<Var>& vars) {
  DegreeSets out;
  bool all_comm = true;
  for (const auto& t : rep) {
    check_term(t);
    for (Var u : vars) {
      std::uint32_t n = count(t.left, u);
      if (t.kind == ReprTerm::Kind::Comm) n += count(t.right, u) + (u == t.i) + (u == t.j);
      out.S.insert(n);
    }
    all_comm = all_comm && t.kind == ReprTerm::Kind::Comm;
  }
  if (all_comm) out.D = bilateral_degrees(rep, vars);
  return out;
}

}  // namespace pivar
