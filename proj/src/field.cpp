#include "pivar/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pivar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotAnExtension: return "NotAnExtension";
    case ErrorKind::PoolMismatch: return "PoolMismatch";
    case ErrorKind::PoolExhausted: return "PoolExhausted";
    case ErrorKind::CharMismatch: return "CharMismatch";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::MalformedRepresentation: return "MalformedRepresentation";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::InvalidSigma: return "InvalidSigma";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariableArity: return "UnknownVariableArity";
    case ErrorKind::Io: return "Io";
  }
  return "Error";
}

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  // exp_table has 2(q-1) entries so that log a + log b never needs a reduction.
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
  std::vector<std::uint32_t> add_table;  // only for small odd extension fields

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t d = (a % p + b % p) % p;
      r += d * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // low to high over GF(p)

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint64_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - lead * g[i] % p) % p);
    }
    trim(f);
  }
  return f;
}

Poly unpack(std::uint64_t v, std::uint32_t p, std::uint32_t len) {
  Poly r(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    r[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return r;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g = unpack(v, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t v = 0; v < count; ++v) {
    Poly f = unpack(v, p, k);
    f.push_back(1);
    if (f[0] == 0) continue;  // divisible by t
    if (irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::DegreeOutOfRange, "no irreducible polynomial found");
}

// Product modulo the field modulus, working on coordinate vectors.
std::uint32_t slow_mul(const detail::FieldData& d, std::uint32_t a, std::uint32_t b) {
  Poly x = unpack(a, d.p, d.k), y = unpack(b, d.p, d.k);
  Poly prod(2 * d.k, 0);
  for (std::uint32_t i = 0; i < d.k; ++i) {
    if (!x[i]) continue;
    for (std::uint32_t j = 0; j < d.k; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % d.p);
    }
  }
  Poly r = poly_mod(prod, d.modulus, d.p);
  std::uint32_t v = 0, scale = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    v += r[i] * scale;
    scale *= d.p;
  }
  return v;
}

void build_tables(detail::FieldData& d) {
  const std::uint32_t n = d.q - 1;
  d.exp_table.assign(2 * static_cast<std::size_t>(n), 0);
  d.log_table.assign(d.q, 0);
  for (std::uint32_t g = 2; g < d.q || d.q == 2; ++g) {
    std::uint32_t cand = d.q == 2 ? 1 : g;
    std::uint32_t x = 1;
    std::uint32_t i = 0;
    bool ok = true;
    for (; i < n; ++i) {
      d.exp_table[i] = x;
      x = slow_mul(d, x, cand);
      if (x == 1 && i + 1 < n) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    d.exp_table[i + n] = d.exp_table[i];
    d.log_table[d.exp_table[i]] = i;
  }
  if (d.p != 2 && d.k > 1 && d.q <= 1024) {
    d.add_table.resize(static_cast<std::size_t>(d.q) * d.q);
    for (std::uint32_t a = 0; a < d.q; ++a)
      for (std::uint32_t b = 0; b < d.q; ++b) d.add_table[a * d.q + b] = d.add_digits(a, b);
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t k, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorKind::DegreeOutOfRange, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > cap) {
      throw Error(ErrorKind::CapExceeded,
                  "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds the size cap " +
                      std::to_string(cap));
    }
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<detail::FieldData>>
      registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{p, k}];
  if (!slot) {
    auto d = std::make_unique<detail::FieldData>();
    d->p = p;
    d->k = k;
    d->q = static_cast<std::uint32_t>(q);
    d->modulus = smallest_irreducible(p, k);
    build_tables(*d);
    slot = std::move(d);
  }
  return FieldSpec(slot.get());
}

const detail::FieldData& FieldSpec::data() const {
  if (!data_) throw Error(ErrorKind::FieldMismatch, "use of an empty FieldSpec");
  return *data_;
}

std::uint32_t FieldSpec::characteristic() const { return data().p; }
std::uint32_t FieldSpec::degree() const { return data().k; }
std::uint32_t FieldSpec::order() const { return data().q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return data().modulus; }

std::string FieldSpec::name() const {
  const auto& d = data();
  if (d.k == 1) return "GF(" + std::to_string(d.p) + ")";
  return "GF(" + std::to_string(d.p) + "^" + std::to_string(d.k) + ")";
}

std::uint32_t FieldSpec::add(std::uint32_t a, std::uint32_t b) const {
  const auto& d = *data_;
  if (d.p == 2) return a ^ b;
  if (d.k == 1) {
    std::uint32_t s = a + b;
    return s >= d.p ? s - d.p : s;
  }
  if (!d.add_table.empty()) return d.add_table[a * d.q + b];
  return d.add_digits(a, b);
}

std::uint32_t FieldSpec::neg(std::uint32_t a) const {
  const auto& d = *data_;
  if (d.p == 2 || a == 0) return a;
  if (d.k == 1) return d.p - a;
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < d.k; ++i) {
    std::uint32_t c = a % d.p;
    r += (c ? d.p - c : 0) * scale;
    a /= d.p;
    scale *= d.p;
  }
  return r;
}

std::uint32_t FieldSpec::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  const auto& d = *data_;
  if (d.k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % d.p);
  return d.exp_table[d.log_table[a] + d.log_table[b]];
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const auto& d = *data_;
  if (d.q == 2) return 1;
  std::uint32_t n = d.q - 1;
  return d.exp_table[(n - d.log_table[a]) % n];
}

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const auto& d = *data_;
  // Square-and-multiply on the logarithm keeps this exact for any e.
  std::uint64_t n = d.q - 1;
  std::uint64_t l = d.log_table[a] % n;
  return d.exp_table[(l * (e % n)) % n];
}

std::uint32_t FieldSpec::frobenius(std::uint32_t a, std::uint32_t j) const {
  const auto& d = data();
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < j % d.k; ++i) e *= d.p;
  return pow(a, e);
}

std::uint32_t FieldSpec::from_int(std::int64_t n) const {
  const auto& d = data();
  std::int64_t r = n % static_cast<std::int64_t>(d.p);
  if (r < 0) r += d.p;
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> FieldSpec::coords(std::uint32_t a) const {
  const auto& d = data();
  return unpack(a, d.p, d.k);
}

std::uint32_t FieldSpec::pack(const std::vector<std::uint32_t>& c) const {
  const auto& d = data();
  if (c.size() > d.k) throw Error(ErrorKind::ShapeError, "too many coordinates");
  std::uint32_t v = 0, scale = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    v += (c[i] % d.p) * scale;
    scale *= d.p;
  }
  return v;
}

std::uint32_t FieldSpec::generator() const {
  const auto& d = data();
  return d.k == 1 ? 0 : d.p;
}

Scalar FieldSpec::element(std::uint32_t packed) const {
  if (packed >= order()) throw Error(ErrorKind::ShapeError, "packed value out of range");
  return Scalar(*this, packed);
}
Scalar FieldSpec::zero() const { return Scalar(*this, 0); }
Scalar FieldSpec::one() const { return Scalar(*this, 1); }

Scalar::Scalar(FieldSpec field, std::uint32_t packed) : field_(field), value_(packed) {}

namespace {
void check_same(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "scalars from different fields");
}
}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(*this, o);
  value_ = field_.add(value_, o.value_);
  return *this;
}
Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(*this, o);
  value_ = field_.sub(value_, o.value_);
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(*this, o);
  value_ = field_.mul(value_, o.value_);
  return *this;
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  return a * inv(b);
}

Scalar inv(const Scalar& a) { return {a.field(), a.field().inv(a.packed())}; }
Scalar pow(const Scalar& a, std::uint64_t e) { return {a.field(), a.field().pow(a.packed(), e)}; }
Scalar frobenius_power(const Scalar& a, std::uint32_t j) {
  return {a.field(), a.field().frobenius(a.packed(), j)};
}

std::string to_string(const Scalar& a) {
  auto c = a.coords();
  if (c.size() == 1) return std::to_string(c[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (!c[i]) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1) os << c[i];
    os << 't';
    if (i > 1) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

SubfieldLattice subfield_lattice(const FieldSpec& F, const FieldSpec& G) {
  if (F.characteristic() != G.characteristic() || G.degree() % F.degree() != 0) {
    throw Error(ErrorKind::NotAnExtension, G.name() + " is not an extension of " + F.name());
  }
  SubfieldLattice out;
  const std::uint32_t kf = F.degree(), kg = G.degree();
  for (std::uint32_t d = kf; d <= kg; d += kf)
    if (kg % d == 0) out.degrees.push_back(d);
  for (std::uint32_t d : out.degrees) {
    if (d == kg) continue;
    bool maximal = true;
    for (std::uint32_t e : out.degrees)
      if (e != d && e != kg && e % d == 0) maximal = false;
    if (maximal) out.maximal_proper.push_back(d);
  }
  return out;
}

}  // namespace pivar
