#include "pivar/genpoly.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace pivar {

namespace {

struct MonoHash {
  std::size_t operator()(const GenMonomial& m) const noexcept {
    std::size_t h = m.size();
    for (auto v : m) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

GenMonomial merge(const GenMonomial& a, const GenMonomial& b) {
  GenMonomial r(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), r.begin());
  return r;
}

void reduce_monomial(GenMonomial& m, std::uint32_t q) {
  GenMonomial out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    std::uint32_t e = reduce_exponent(static_cast<std::uint32_t>(j - i), q);
    out.insert(out.end(), e, m[i]);
    i = j;
  }
  m = std::move(out);
}

std::vector<GenPoly::Term> collect(std::unordered_map<GenMonomial, std::uint32_t, MonoHash>& acc) {
  std::vector<GenPoly::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) out.emplace_back(m, c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::uint32_t reduce_exponent(std::uint32_t e, std::uint32_t q) {
  if (e < q) return e;
  return (e - 1) % (q - 1) + 1;
}

GenPoly::GenPoly(FieldSpec field, std::uint32_t pool) : field_(field), pool_(pool) {}

GenPoly GenPoly::constant(FieldSpec field, std::uint32_t pool, std::uint32_t packed) {
  GenPoly g(field, pool);
  if (packed) g.terms_.emplace_back(GenMonomial{}, packed);
  return g;
}

GenPoly GenPoly::variable(FieldSpec field, std::uint32_t pool, std::uint32_t var) {
  GenPoly g(field, pool);
  g.terms_.emplace_back(GenMonomial{var}, 1u);
  return g;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> GenPoly::exponents(const GenMonomial& m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> r;
  for (auto v : m) {
    if (!r.empty() && r.back().first == v)
      ++r.back().second;
    else
      r.emplace_back(v, 1u);
  }
  return r;
}

void GenPoly::check_compatible(const GenPoly& o) const {
  if (field_ != o.field_) throw Error(ErrorKind::FieldMismatch, "generic polynomials over different fields");
  if (pool_ != o.pool_) throw Error(ErrorKind::PoolMismatch, "generic polynomials from different pools");
}

GenPoly& GenPoly::operator+=(const GenPoly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      std::uint32_t c = field_.add(i->second, j->second);
      if (c) out.emplace_back(std::move(i->first), c);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

GenPoly GenPoly::operator-() const {
  GenPoly r = *this;
  for (auto& t : r.terms_) t.second = field_.neg(t.second);
  return r;
}

GenPoly& GenPoly::operator-=(const GenPoly& o) { return *this += -o; }

GenPoly GenPoly::scaled(std::uint32_t packed) const {
  GenPoly r(field_, pool_);
  if (!packed) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = field_.mul(t.second, packed);
  return r;
}

GenPoly GenPoly::mul(const GenPoly& a, const GenPoly& b, std::optional<std::uint32_t> reduce_q) {
  a.check_compatible(b);
  GenPoly r(a.field_, a.pool_);
  if (a.is_zero() || b.is_zero()) return r;
  std::unordered_map<GenMonomial, std::uint32_t, MonoHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      GenMonomial m = merge(ma, mb);
      if (reduce_q) reduce_monomial(m, *reduce_q);
      auto& slot = acc[std::move(m)];
      slot = a.field_.add(slot, a.field_.mul(ca, cb));
    }
  }
  r.terms_ = collect(acc);
  return r;
}

GenPoly GenPoly::reduced(std::uint32_t q) const {
  std::unordered_map<GenMonomial, std::uint32_t, MonoHash> acc;
  for (const auto& [m, c] : terms_) {
    GenMonomial mm = m;
    reduce_monomial(mm, q);
    auto& slot = acc[std::move(mm)];
    slot = field_.add(slot, c);
  }
  GenPoly r(field_, pool_);
  r.terms_ = collect(acc);
  return r;
}

std::uint32_t GenPoly::evaluate(const std::unordered_map<std::uint32_t, std::uint32_t>& point) const {
  std::uint32_t sum = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t v = c;
    for (auto var : m) {
      auto it = point.find(var);
      v = field_.mul(v, it == point.end() ? 0 : it->second);
      if (!v) break;
    }
    sum = field_.add(sum, v);
  }
  return sum;
}

std::string GenPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit = (c == 1);
    if (!unit || m.empty()) os << pivar::to_string(Scalar(field_, c));
    for (const auto& [v, e] : exponents(m)) {
      if (!unit) os << '*';
      unit = false;
      os << 'g' << v;
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

namespace {
std::atomic<std::uint32_t> next_pool_id{1};
}

GenericPool::GenericPool(FieldSpec field, std::uint32_t capacity)
    : field_(field), id_(next_pool_id++), capacity_(capacity) {}

std::uint32_t GenericPool::reserve(std::string_view tag, std::uint32_t n) {
  auto it = tags_.find(std::string(tag));
  if (it != tags_.end()) {
    if (it->second.second != n) {
      throw Error(ErrorKind::PoolExhausted, "tag '" + std::string(tag) + "' reserved with another size");
    }
    return it->second.first;
  }
  if (std::uint64_t{next_} + n > capacity_) {
    throw Error(ErrorKind::PoolExhausted, "generic pool capacity " + std::to_string(capacity_) + " exceeded");
  }
  std::uint32_t start = next_;
  next_ += n;
  tags_.emplace(std::string(tag), std::make_pair(start, n));
  return start;
}

}  // namespace pivar
