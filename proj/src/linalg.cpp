#include "pivar/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>

namespace pivar {

bool EchelonBasis::add(const Vec& v) {
  Vec r = reduce(v);
  auto lead = std::find_if(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; });
  if (lead == r.end()) return false;
  std::size_t pc = static_cast<std::size_t>(lead - r.begin());
  std::uint32_t s = field_.inv(*lead);
  for (auto& x : r) x = field_.mul(x, s);
  // Keep the basis fully reduced: clear the new pivot column elsewhere.
  for (auto& row : rows_) {
    std::uint32_t c = row[pc];
    if (!c) continue;
    for (std::size_t i = 0; i < n_; ++i) row[i] = field_.sub(row[i], field_.mul(c, r[i]));
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pc);
  return true;
}

Vec EchelonBasis::reduce(Vec v) const {
  if (v.size() != n_) throw Error(ErrorKind::ShapeError, "vector length differs from ambient dimension");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t c = v[pivots_[r]];
    if (!c) continue;
    const Vec& row = rows_[r];
    for (std::size_t i = 0; i < n_; ++i)
      if (row[i]) v[i] = field_.sub(v[i], field_.mul(c, row[i]));
  }
  return v;
}

bool EchelonBasis::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

Matrix mat_mul(const FieldSpec& f, const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      std::uint32_t x = a[i][k];
      if (!x) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[k][j]) c[i][j] = f.add(c[i][j], f.mul(x, b[k][j]));
    }
  return c;
}

bool is_zero(const Matrix& m) {
  for (const auto& row : m)
    for (auto x : row)
      if (x) return false;
  return true;
}

std::optional<Matrix> mat_inverse(const FieldSpec& f, Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    std::uint32_t s = f.inv(m[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = f.mul(m[col][j], s);
      inv[col][j] = f.mul(inv[col][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      std::uint32_t c = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] = f.sub(m[r][j], f.mul(c, m[col][j]));
        inv[r][j] = f.sub(inv[r][j], f.mul(c, inv[col][j]));
      }
    }
  }
  return inv;
}

Matrix mat_pow(const FieldSpec& f, const Matrix& m, std::uint64_t e) {
  const std::size_t n = m.size();
  Matrix r(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  Matrix base = m;
  while (e) {
    if (e & 1) r = mat_mul(f, r, base);
    e >>= 1;
    if (e) base = mat_mul(f, base, base);
  }
  return r;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

using Acc = std::unordered_map<std::uint32_t, std::uint32_t>;

void axpy(Acc& acc, const SparseEchelon::SparseRow& x, std::uint64_t c, std::uint32_t p) {
  for (const auto& [id, v] : x) {
    auto& slot = acc[id];
    slot = static_cast<std::uint32_t>((slot + c * v) % p);
  }
}

SparseEchelon::SparseRow to_row(const Acc& acc) {
  SparseEchelon::SparseRow r;
  for (const auto& [id, v] : acc)
    if (v) r.emplace_back(id, v);
  std::sort(r.begin(), r.end());
  return r;
}

// Scratch accumulator for reductions; one per thread.
struct Scratch {
  std::vector<std::uint32_t> dense;
};
thread_local Scratch scratch;

}  // namespace

SparseEchelon::SparseEchelon(std::uint32_t p, std::size_t columns, bool track)
    : p_(p), columns_(columns), track_(track), pivot_of_(columns, -1) {}

void SparseEchelon::reduce(SparseRow& row, SparseRow* combo) const {
  auto& acc = scratch.dense;
  if (acc.size() < columns_) acc.assign(columns_, 0);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  std::vector<std::uint32_t> touched;
  for (const auto& [c, v] : row) {
    if (c >= columns_) throw Error(ErrorKind::ShapeError, "column index out of range");
    acc[c] = static_cast<std::uint32_t>((acc[c] + v) % p_);
    heap.push(c);
    touched.push_back(c);
  }
  Acc combo_acc;
  SparseRow out;
  std::int64_t prev = -1;
  while (!heap.empty()) {
    std::uint32_t c = heap.top();
    heap.pop();
    if (static_cast<std::int64_t>(c) == prev) continue;
    prev = c;
    std::uint32_t coef = acc[c];
    if (!coef) continue;
    std::int32_t r = pivot_of_[c];
    if (r < 0) {
      out.emplace_back(c, coef);
      continue;
    }
    const Stored& s = rows_[static_cast<std::size_t>(r)];
    std::uint64_t neg = p_ - coef;
    for (const auto& [col, v] : s.row) {
      if (acc[col] == 0 && col != c) touched.push_back(col);
      acc[col] = static_cast<std::uint32_t>((acc[col] + neg * v) % p_);
      if (col != c) heap.push(col);
    }
    if (combo) axpy(combo_acc, s.combo, coef, p_);
  }
  for (auto c : touched) acc[c] = 0;
  row = std::move(out);
  if (combo) *combo = to_row(combo_acc);
}

bool SparseEchelon::insert(SparseRow row, std::uint32_t id) {
  std::sort(row.begin(), row.end());
  SparseRow used;
  reduce(row, track_ ? &used : nullptr);
  if (row.empty()) return false;
  Stored s;
  std::uint64_t scale = inv_mod(row.front().second, p_);
  for (auto& [c, v] : row) v = static_cast<std::uint32_t>(v * scale % p_);
  s.row = std::move(row);
  if (track_) {
    // stored = inserted - sum(coef * pivot combos)
    Acc acc;
    acc[id] = 1;
    axpy(acc, used, p_ - 1, p_);
    s.combo = to_row(acc);
    for (auto& [i, v] : s.combo) v = static_cast<std::uint32_t>(v * scale % p_);
  }
  pivot_of_[s.row.front().first] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(s));
  return true;
}

std::optional<SparseEchelon::SparseRow> SparseEchelon::express(const SparseRow& target) const {
  SparseRow row = target;
  std::sort(row.begin(), row.end());
  SparseRow combo;
  reduce(row, &combo);
  if (!row.empty()) return std::nullopt;
  return combo;
}

}  // namespace pivar
