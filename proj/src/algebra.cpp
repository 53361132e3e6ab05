#include "pivar/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pivar {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Field: return "field";
    case Provenance::C: return "C_N";
    case Provenance::A: return "A(U)";
    case Provenance::B: return "B";
    case Provenance::Matrix: return "matrix";
    case Provenance::Opposite: return "opposite-of";
    case Provenance::Custom: return "custom";
  }
  return "custom";
}

AlgebraPtr build_algebra(FieldSpec field, std::size_t dim, const std::vector<ProductEntry>& table,
                         std::vector<std::string> labels, std::string name, Provenance provenance,
                         Provenance base_provenance) {
  if (!field.valid()) throw Error(ErrorKind::ShapeError, "algebra without a field");
  if (labels.empty())
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i + 1));
  if (labels.size() != dim) throw Error(ErrorKind::ShapeError, "label count differs from dimension");

  std::shared_ptr<StructAlgebra> a(new StructAlgebra());
  a->field_ = field;
  a->dim_ = dim;
  a->name_ = std::move(name);
  a->provenance_ = provenance;
  a->base_provenance_ = base_provenance;
  a->labels_ = std::move(labels);
  a->rows_.resize(dim);

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : table) {
    if (e.i >= dim || e.j >= dim) throw Error(ErrorKind::ShapeError, "basis index out of range");
    if (!seen.emplace(e.i, e.j).second) {
      throw Error(ErrorKind::ShapeError, "product b" + std::to_string(e.i + 1) + "*b" + std::to_string(e.j + 1) +
                                             " given twice");
    }
    std::map<std::uint32_t, std::uint32_t> acc;
    for (const auto& [k, c] : e.terms) {
      if (k >= dim) throw Error(ErrorKind::ShapeError, "basis index out of range");
      if (c.field() != field) throw Error(ErrorKind::FieldMismatch, "structure constant from another field");
      acc[k] = field.add(acc[k], c.packed());
    }
    StructAlgebra::Row row{e.j, {}};
    for (const auto& [k, c] : acc)
      if (c) row.terms.emplace_back(k, c);
    if (!row.terms.empty()) a->rows_[e.i].push_back(std::move(row));
  }
  for (auto& r : a->rows_)
    std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.right < y.right; });
  return a;
}

Vec StructAlgebra::basis_product(std::uint32_t i, std::uint32_t j) const {
  Vec out(dim_, 0);
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Row& x, std::uint32_t v) { return x.right < v; });
  if (it != r.end() && it->right == j)
    for (const auto& [k, c] : it->terms) out[k] = c;
  return out;
}

std::size_t StructAlgebra::nonzero_products() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

Vec StructAlgebra::multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const {
  return multiply<FieldRing>(FieldRing{field_}, a, b);
}

namespace {

using Sparse = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void add_scaled(const FieldSpec& f, Sparse& acc, const Sparse& x, std::uint32_t c) {
  for (const auto& [k, v] : x) acc.emplace_back(k, f.mul(v, c));
}

Sparse normalize(const FieldSpec& f, Sparse s) {
  std::sort(s.begin(), s.end());
  Sparse out;
  for (const auto& [k, v] : s) {
    if (!out.empty() && out.back().first == k)
      out.back().second = f.add(out.back().second, v);
    else
      out.emplace_back(k, v);
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

}  // namespace

std::optional<std::array<std::uint32_t, 3>> StructAlgebra::find_associativity_violation() const {
  // Only triples touching a nonzero product on some side can fail.
  auto product = [&](std::uint32_t i, std::uint32_t j) -> const Sparse* {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Row& x, std::uint32_t v) { return x.right < v; });
    return (it != r.end() && it->right == j) ? &it->terms : nullptr;
  };
  std::vector<std::vector<std::uint32_t>> left_partners(dim_);  // m -> {i : b_i b_m != 0}
  for (std::uint32_t i = 0; i < dim_; ++i)
    for (const auto& r : rows_[i]) left_partners[r.right].push_back(i);

  auto check = [&](std::uint32_t i, std::uint32_t j, std::uint32_t l) {
    Sparse lhs, rhs;
    if (const Sparse* ij = product(i, j))
      for (const auto& [k, c] : *ij)
        if (const Sparse* kl = product(k, l)) add_scaled(field_, lhs, *kl, c);
    if (const Sparse* jl = product(j, l))
      for (const auto& [m, c] : *jl)
        if (const Sparse* im = product(i, m)) add_scaled(field_, rhs, *im, c);
    return normalize(field_, std::move(lhs)) == normalize(field_, std::move(rhs));
  };

  for (std::uint32_t i = 0; i < dim_; ++i) {
    for (const auto& r : rows_[i]) {
      std::set<std::uint32_t> ls;
      for (const auto& [k, c] : r.terms)
        for (const auto& kr : rows_[k]) ls.insert(kr.right);
      for (auto l : ls)
        if (!check(i, r.right, l)) return std::array{i, r.right, l};
    }
  }
  for (std::uint32_t j = 0; j < dim_; ++j) {
    for (const auto& r : rows_[j]) {
      std::set<std::uint32_t> is;
      for (const auto& [m, c] : r.terms) is.insert(left_partners[m].begin(), left_partners[m].end());
      for (auto i : is)
        if (!check(i, j, r.right)) return std::array{i, j, r.right};
    }
  }
  return std::nullopt;
}

bool StructAlgebra::same_structure(const StructAlgebra& o) const {
  if (field_ != o.field_ || dim_ != o.dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (rows_[i].size() != o.rows_[i].size()) return false;
    for (std::size_t n = 0; n < rows_[i].size(); ++n)
      if (rows_[i][n].right != o.rows_[i][n].right || rows_[i][n].terms != o.rows_[i][n].terms) return false;
  }
  return true;
}

std::vector<ProductEntry> StructAlgebra::entries() const {
  std::vector<ProductEntry> out;
  for (std::uint32_t i = 0; i < dim_; ++i)
    for (const auto& r : rows_[i]) {
      ProductEntry e{i, r.right, {}};
      for (const auto& [k, c] : r.terms) e.terms.emplace_back(k, Scalar(field_, c));
      out.push_back(std::move(e));
    }
  return out;
}

AlgebraPtr from_structure_constants(FieldSpec field, std::size_t dim, const std::vector<ProductEntry>& table,
                                    std::vector<std::string> labels, std::string name) {
  auto a = build_algebra(field, dim, table, std::move(labels), std::move(name), Provenance::Custom,
                         Provenance::Custom);
  if (auto bad = a->find_associativity_violation()) {
    const auto& l = a->labels();
    throw Error(ErrorKind::NotAssociative, "(" + l[(*bad)[0]] + "*" + l[(*bad)[1]] + ")*" + l[(*bad)[2]] +
                                               " != " + l[(*bad)[0]] + "*(" + l[(*bad)[1]] + "*" +
                                               l[(*bad)[2]] + ")");
  }
  return a;
}

namespace {

AlgebraPtr checked(AlgebraPtr a) {
  if (a->find_associativity_violation()) {
    throw Error(ErrorKind::NotAssociative, "catalog constructor produced a non-associative table for " + a->name());
  }
  return a;
}

}  // namespace

AlgebraPtr field_algebra(FieldSpec field) {
  std::vector<ProductEntry> t{{0, 0, {{0, field.one()}}}};
  return checked(build_algebra(field, 1, t, {"1"}, "F", Provenance::Field, Provenance::Field));
}

AlgebraPtr make_C(std::uint32_t n, FieldSpec field) {
  if (n < 1 || n > kMaxCGenerators) {
    throw Error(ErrorKind::CapExceeded, "C(N) needs 1 <= N <= " + std::to_string(kMaxCGenerators));
  }
  const std::uint32_t dim = (1u << n) - 1;
  std::vector<std::string> labels;
  for (std::uint32_t s = 1; s <= dim; ++s) {
    std::string l;
    for (std::uint32_t g = 0; g < n; ++g)
      if (s >> g & 1) l += "c" + std::to_string(g + 1);
    labels.push_back(std::move(l));
  }
  std::vector<ProductEntry> t;
  for (std::uint32_t a = 1; a <= dim; ++a)
    for (std::uint32_t b = 1; b <= dim; ++b)
      if (!(a & b)) t.push_back({a - 1, b - 1, {{(a | b) - 1, field.one()}}});
  return checked(build_algebra(field, dim, t, std::move(labels), "C(" + std::to_string(n) + ")", Provenance::C,
                               Provenance::C));
}

AlgebraPtr make_A(const AlgebraPtr& u) {
  const auto n = static_cast<std::uint32_t>(u->dim());
  std::vector<std::string> labels;
  for (const auto& l : u->labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : u->labels()) labels.push_back("(0," + l + ")");
  std::vector<ProductEntry> t;
  for (const auto& e : u->entries()) {
    t.push_back({e.i, e.j, e.terms});
    ProductEntry upper{e.i, e.j + n, {}};
    for (const auto& [k, c] : e.terms) upper.terms.emplace_back(k + n, c);
    t.push_back(std::move(upper));
  }
  return checked(build_algebra(u->field(), 2 * n, t, std::move(labels), "A(" + u->name() + ")", Provenance::A,
                               Provenance::A));
}

AlgebraPtr matrix_algebra(std::uint32_t n, FieldSpec field) {
  if (n < 1 || n > 4) throw Error(ErrorKind::CapExceeded, "M(n) needs 1 <= n <= 4");
  std::vector<std::string> labels;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) labels.push_back("e" + std::to_string(i) + std::to_string(j));
  std::vector<ProductEntry> t;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t l = 0; l < n; ++l) t.push_back({i * n + j, j * n + l, {{i * n + l, field.one()}}});
  return checked(build_algebra(field, n * n, t, std::move(labels), "M(" + std::to_string(n) + ")",
                               Provenance::Matrix, Provenance::Matrix));
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  std::vector<ProductEntry> t;
  for (auto e : a->entries()) {
    std::swap(e.i, e.j);
    t.push_back(std::move(e));
  }
  std::string name;
  Provenance prov = Provenance::Opposite;
  if (a->provenance() == Provenance::Opposite) {
    const std::string& n = a->name();
    name = n.substr(3, n.size() - 4);
    prov = a->base_provenance();
  } else {
    name = "op(" + a->name() + ")";
  }
  return checked(build_algebra(a->field(), a->dim(), t, a->labels(), std::move(name), prov, a->base_provenance()));
}

std::vector<std::uint32_t> valid_sigmas(const FieldSpec& F, const FieldSpec& G) {
  auto lattice = subfield_lattice(F, G);
  if (F.degree() == G.degree()) {
    throw Error(ErrorKind::NotAnExtension, G.name() + " is not a proper extension of " + F.name());
  }
  std::vector<std::uint32_t> out;
  if (!lattice.has_unique_maximal()) return out;
  const std::uint32_t target = lattice.maximal_proper.front();
  for (std::uint32_t j = 1; j < G.degree(); ++j)
    if (std::gcd(j, G.degree()) == target) out.push_back(j);
  return out;
}

ExtensionBasis::ExtensionBasis(FieldSpec F, FieldSpec G) : F_(F), G_(G) {
  subfield_lattice(F, G);  // validates
  const std::uint32_t kf = F.degree(), kg = G.degree();
  m_ = kg / kf;
  // Find the image of F's generator: a root of F's modulus inside G.
  if (kf == 1) {
    root_ = 0;
  } else {
    const auto& mod = F.modulus();
    bool found = false;
    for (std::uint32_t z = 0; z < G.order() && !found; ++z) {
      std::uint32_t v = 0, zp = 1;
      for (auto c : mod) {
        v = G.add(v, G.mul(G.from_int(c), zp));
        zp = G.mul(zp, z);
      }
      if (v == 0) {
        root_ = z;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::NotAnExtension, "no embedding of " + F.name() + " into " + G.name());
  }
  // Columns: GF(p)-coordinates of root^a * t^i, indexed by i * kf + a.
  FieldSpec P = FieldSpec::make(G.characteristic());
  Matrix cols(kg, Vec(kg, 0));
  const std::uint32_t t = G.generator() ? G.generator() : 1;
  std::uint32_t ti = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t ra = 1;
    for (std::uint32_t a = 0; a < kf; ++a) {
      auto c = G.coords(G.mul(ti, ra));
      for (std::uint32_t r = 0; r < kg; ++r) cols[r][i * kf + a] = c[r];
      ra = G.mul(ra, kf == 1 ? 1 : root_);
    }
    ti = G.mul(ti, m_ == 1 ? 1 : t);
  }
  auto inv = mat_inverse(P, cols);
  if (!inv) throw Error(ErrorKind::NotAnExtension, "degenerate extension basis");
  to_prime_coords_ = std::move(*inv);
}

std::uint32_t ExtensionBasis::embed(std::uint32_t f) const {
  auto c = F_.coords(f);
  std::uint32_t v = 0, ra = 1;
  for (auto x : c) {
    v = G_.add(v, G_.mul(G_.from_int(x), ra));
    ra = G_.mul(ra, root_ ? root_ : 1);
  }
  return v;
}

Vec ExtensionBasis::to_coords(std::uint32_t g) const {
  FieldSpec P = FieldSpec::make(G_.characteristic());
  const std::uint32_t kf = F_.degree(), kg = G_.degree();
  auto z = G_.coords(g);
  Vec sol(kg, 0);
  for (std::uint32_t r = 0; r < kg; ++r)
    for (std::uint32_t c = 0; c < kg; ++c) sol[r] = P.add(sol[r], P.mul(to_prime_coords_[r][c], z[c]));
  Vec out(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::vector<std::uint32_t> fc(sol.begin() + i * kf, sol.begin() + (i + 1) * kf);
    out[i] = F_.pack(fc);
  }
  return out;
}

std::uint32_t ExtensionBasis::from_coords(const Vec& c) const {
  const std::uint32_t t = G_.generator() ? G_.generator() : 1;
  std::uint32_t v = 0, ti = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    v = G_.add(v, G_.mul(embed(c.at(i)), ti));
    ti = G_.mul(ti, t);
  }
  return v;
}

AlgebraPtr make_B(FieldSpec F, FieldSpec G, std::uint32_t j) {
  auto sigmas = valid_sigmas(F, G);
  if (std::find(sigmas.begin(), sigmas.end(), j) == sigmas.end()) {
    throw Error(ErrorKind::InvalidSigma, "x -> x^(p^" + std::to_string(j) + ") is not admissible for " +
                                             G.name() + " over " + F.name());
  }
  ExtensionBasis basis(F, G);
  const std::uint32_t m = basis.degree();
  const std::uint32_t t = G.generator() ? G.generator() : 1;
  std::vector<std::uint32_t> powers(m);
  powers[0] = 1;
  for (std::uint32_t i = 1; i < m; ++i) powers[i] = G.mul(powers[i - 1], t);

  auto entry = [&](std::uint32_t i, std::uint32_t jj, std::uint32_t g, std::uint32_t offset) {
    ProductEntry e{i, jj, {}};
    auto c = basis.to_coords(g);
    for (std::uint32_t k = 0; k < m; ++k)
      if (c[k]) e.terms.emplace_back(k + offset, Scalar(F, c[k]));
    return e;
  };
  std::vector<ProductEntry> t_entries;
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      std::uint32_t ab = G.mul(powers[a], powers[b]);
      t_entries.push_back(entry(a, b, ab, 0));                                                  // (b1,0)(b2,0)
      t_entries.push_back(entry(a, b + m, ab, m));                                              // (b,0)(0,c)
      t_entries.push_back(entry(a + m, b, G.mul(powers[a], G.frobenius(powers[b], j)), m));    // (0,c)(b,0)
    }
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < m; ++i) labels.push_back("(t^" + std::to_string(i) + ",0)");
  for (std::uint32_t i = 0; i < m; ++i) labels.push_back("(0,t^" + std::to_string(i) + ")");
  std::string name = "B(" + std::to_string(F.order()) + "," + std::to_string(G.order()) + "," + std::to_string(j) + ")";
  return checked(build_algebra(F, 2 * m, t_entries, std::move(labels), std::move(name), Provenance::B, Provenance::B));
}

Vec b_element(const ExtensionBasis& basis, std::uint32_t b, std::uint32_t c) {
  Vec out = basis.to_coords(b);
  Vec cc = basis.to_coords(c);
  out.insert(out.end(), cc.begin(), cc.end());
  return out;
}

// Elements.

bool AlgElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::uint32_t x) { return x == 0; });
}

std::string AlgElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (coords[i] != 1) os << pivar::to_string(Scalar(algebra->field(), coords[i])) << '*';
    os << algebra->labels()[i];
  }
  if (first) os << '0';
  return os.str();
}

AlgElem basis_element(const AlgebraPtr& a, std::uint32_t i) {
  AlgElem e{a, Vec(a->dim(), 0)};
  e.coords.at(i) = 1;
  return e;
}

AlgElem zero_element(const AlgebraPtr& a) { return {a, Vec(a->dim(), 0)}; }

namespace {
void check_same_algebra(const AlgElem& a, const AlgElem& b) {
  if (a.algebra != b.algebra && !a.algebra->same_structure(*b.algebra)) {
    throw Error(ErrorKind::ShapeError, "elements of different algebras");
  }
}
}  // namespace

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  check_same_algebra(a, b);
  AlgElem r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.algebra->field().add(r.coords[i], b.coords[i]);
  return r;
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) {
  check_same_algebra(a, b);
  AlgElem r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.algebra->field().sub(r.coords[i], b.coords[i]);
  return r;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  check_same_algebra(a, b);
  return {a.algebra, a.algebra->multiply(a.coords, b.coords)};
}

AlgElem scale(const AlgElem& a, std::uint32_t packed) {
  AlgElem r = a;
  for (auto& x : r.coords) x = a.algebra->field().mul(x, packed);
  return r;
}

bool operator==(const AlgElem& a, const AlgElem& b) {
  return a.algebra->same_structure(*b.algebra) && a.coords == b.coords;
}

bool GenericElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const GenPoly& g) { return g.is_zero(); });
}

GenericElem generic_element(const AlgebraPtr& a, GenericPool& pool, std::string_view tag) {
  if (pool.field() != a->field()) throw Error(ErrorKind::FieldMismatch, "pool and algebra fields differ");
  const auto n = static_cast<std::uint32_t>(a->dim());
  std::uint32_t start = pool.reserve(tag, n);
  GenericElem e{a, {}};
  for (std::uint32_t i = 0; i < n; ++i) e.coords.push_back(pool.variable(start + i));
  return e;
}

EvalPlan::EvalPlan(const NcPoly& f) : p_(f.characteristic()) {
  auto vs = f.variables();
  vars_.assign(vs.begin(), vs.end());
  std::map<Var, std::uint32_t> slot;
  for (std::uint32_t i = 0; i < vars_.size(); ++i) slot[vars_[i]] = i;
  std::map<std::pair<std::int32_t, std::uint32_t>, std::uint32_t> children;
  for (const auto& [w, c] : f.terms()) {
    if (w.empty()) {
      has_constant_ = true;
      continue;
    }
    std::int32_t node = -1;
    for (Var v : w) {
      auto key = std::make_pair(node, slot[v]);
      auto it = children.find(key);
      if (it == children.end()) {
        it = children.emplace(key, static_cast<std::uint32_t>(nodes_.size())).first;
        nodes_.push_back({node, slot[v]});
      }
      node = static_cast<std::int32_t>(it->second);
    }
    outputs_.emplace_back(static_cast<std::uint32_t>(node), c);
  }
}

Vec EvalPlan::run_field(const StructAlgebra& a, std::span<const Vec> slots) const {
  if (has_constant_) throw Error(ErrorKind::ShapeError, "cannot evaluate the unit word in a non-unital algebra");
  const std::size_t dim = a.dim();
  const FieldSpec& f = a.field();
  thread_local std::vector<std::uint32_t> buf;
  buf.assign(nodes_.size() * dim, 0);
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const Node& node = nodes_[n];
    const Vec& x = slots[node.slot];
    std::uint32_t* out = buf.data() + n * dim;
    if (node.parent < 0) {
      std::copy(x.begin(), x.end(), out);
      continue;
    }
    const std::uint32_t* left = buf.data() + static_cast<std::size_t>(node.parent) * dim;
    for (std::uint32_t i = 0; i < dim; ++i) {
      if (!left[i]) continue;
      for (const auto& r : a.row(i)) {
        std::uint32_t xv = x[r.right];
        if (!xv) continue;
        std::uint32_t prod = f.mul(left[i], xv);
        for (const auto& [k, c] : r.terms) out[k] = f.add(out[k], f.mul(prod, c));
      }
    }
  }
  Vec result(dim, 0);
  for (const auto& [node, c] : outputs_) {
    std::uint32_t cf = f.from_int(c);
    const std::uint32_t* v = buf.data() + node * dim;
    for (std::size_t k = 0; k < dim; ++k)
      if (v[k]) result[k] = f.add(result[k], f.mul(v[k], cf));
  }
  return result;
}

namespace {

template <class Elem>
void check_assignment(const NcPoly& f, const AlgebraPtr& a, const std::map<Var, Elem>& assignment) {
  if (f.characteristic() != a->field().characteristic()) {
    throw Error(ErrorKind::CharMismatch, "polynomial over GF(" + std::to_string(f.characteristic()) +
                                             ") evaluated in an algebra over " + a->field().name());
  }
  for (Var v : f.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw Error(ErrorKind::MissingAssignment, "no value for " + var_name(v));
    if (it->second.coords.size() != a->dim()) throw Error(ErrorKind::ShapeError, "element of the wrong dimension");
  }
}

}  // namespace

AlgElem evaluate_poly(const NcPoly& f, const AlgebraPtr& a, const std::map<Var, AlgElem>& assignment) {
  check_assignment(f, a, assignment);
  EvalPlan plan(f);
  std::vector<Vec> slots;
  for (Var v : plan.variables()) slots.push_back(assignment.at(v).coords);
  return {a, plan.run_field(*a, slots)};
}

GenericElem evaluate_poly(const NcPoly& f, const AlgebraPtr& a, const std::map<Var, GenericElem>& assignment,
                          std::optional<std::uint32_t> reduce_q) {
  check_assignment(f, a, assignment);
  EvalPlan plan(f);
  std::uint32_t pool = 0;
  std::vector<std::vector<GenPoly>> slots;
  for (Var v : plan.variables()) {
    slots.push_back(assignment.at(v).coords);
    if (!slots.back().empty()) pool = slots.back().front().pool();
  }
  GenericRing ring{a->field(), pool, reduce_q};
  return {a, plan.run<GenericRing>(*a, ring, slots)};
}

}  // namespace pivar
