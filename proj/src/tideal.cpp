#include "pivar/tideal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "pivar/linalg.hpp"

namespace pivar {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (Var v : w) h = h * 1000003u ^ v;
    return h;
  }
};

std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + var_name(w[i]);
  return s;
}

using Counts = std::vector<std::uint32_t>;

// Builds the consequence rows of one multidegree block.
class BlockBuilder {
 public:
  BlockBuilder(std::uint32_t p, const std::vector<NcPoly>& gens, const Multidegree& target)
      : p_(p), gens_(gens) {
    for (const auto& [v, d] : target) {
      index_[v] = vars_.size();
      vars_.push_back(v);
      target_.push_back(d);
    }
    total_ = std::accumulate(target_.begin(), target_.end(), 0u);
    Counts r = target_;
    Word w;
    exact_words(r, w, [&](const Word& x) { columns_.push_back(x); });
    std::sort(columns_.begin(), columns_.end(), WordLess{});
    for (std::size_t i = 0; i < columns_.size(); ++i) col_of_[columns_[i]] = static_cast<std::uint32_t>(i);
    block_.degree = target;
    block_.columns = columns_.size();
  }

  SpanBlock build(SparseEchelon& ech) {
    ech_ = &ech;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      auto comps = multihomogeneous_components(gens_[g]);
      for (std::size_t c = 0; c < comps.size(); ++c) {
        gen_ = g;
        comp_ = c;
        h_ = &comps[c].second;
        slots_.clear();
        degs_.clear();
        std::uint32_t need = 0;
        for (const auto& [v, d] : comps[c].first) {
          slots_.push_back(v);
          degs_.push_back(d);
          need += d;
        }
        if (need == 0 || need > total_) continue;
        key_.assign(slots_.size(), {});
        Counts r = target_;
        choose(0, r, need);
      }
    }
    return std::move(block_);
  }

  const std::vector<Word>& columns() const { return columns_; }
  std::optional<SparseEchelon::SparseRow> as_row(const NcPoly& f) const {
    SparseEchelon::SparseRow row;
    for (const auto& [w, c] : f.terms()) {
      auto it = col_of_.find(w);
      if (it == col_of_.end()) return std::nullopt;
      row.emplace_back(it->second, c);
    }
    return row;
  }

 private:
  bool fits(const Word& w, const Counts& r, Counts& after) const {
    after = r;
    for (Var v : w) {
      auto it = index_.find(v);
      if (it == index_.end() || after[it->second] == 0) return false;
      --after[it->second];
    }
    return true;
  }

  // Every nonempty word whose letter counts are bounded by r.
  void bounded_words(Counts& r, Word& w, const std::function<void(const Word&)>& f) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!r[i]) continue;
      --r[i];
      w.push_back(vars_[i]);
      f(w);
      bounded_words(r, w, f);
      w.pop_back();
      ++r[i];
    }
  }

  // Every word with letter counts exactly r.
  void exact_words(Counts& r, Word& w, const std::function<void(const Word&)>& f) const {
    bool any = false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!r[i]) continue;
      any = true;
      --r[i];
      w.push_back(vars_[i]);
      exact_words(r, w, f);
      w.pop_back();
      ++r[i];
    }
    if (!any) f(w);
  }

  // Picks the multiset of words for each slot, nondecreasing within a slot.
  void choose(std::size_t slot, Counts& r, std::uint32_t need) {
    if (slot == slots_.size()) {
      process(r);
      return;
    }
    auto& chosen = key_[slot];
    if (chosen.size() == degs_[slot]) {
      choose(slot + 1, r, need);
      return;
    }
    Word w;
    std::vector<Word> options;
    bounded_words(r, w, [&](const Word& x) { options.push_back(x); });
    std::sort(options.begin(), options.end(), WordLess{});
    for (const auto& x : options) {
      if (!chosen.empty() && WordLess{}(x, chosen.back())) continue;
      Counts after;
      fits(x, r, after);
      std::uint32_t left = std::accumulate(after.begin(), after.end(), 0u);
      if (left < need - 1) continue;
      chosen.push_back(x);
      choose(slot, after, need - 1);
      chosen.pop_back();
    }
  }

  void process(const Counts& remainder) {
    // Distinct arrangements of each slot's multiset.
    std::vector<std::vector<std::vector<Word>>> perms(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      std::vector<Word> m = key_[s];
      std::sort(m.begin(), m.end(), WordLess{});
      do perms[s].push_back(m);
      while (std::next_permutation(m.begin(), m.end(), WordLess{}));
    }
    std::unordered_map<Word, std::uint32_t, WordHash> acc;
    std::vector<std::size_t> choice(slots_.size());
    std::vector<std::size_t> seen(slots_.size());
    for (const auto& [word, coeff] : h_->terms()) {
      std::fill(choice.begin(), choice.end(), 0);
      for (;;) {
        std::fill(seen.begin(), seen.end(), 0);
        Word out;
        for (Var y : word) {
          std::size_t s = static_cast<std::size_t>(std::find(slots_.begin(), slots_.end(), y) - slots_.begin());
          const Word& piece = perms[s][choice[s]][seen[s]++];
          out.insert(out.end(), piece.begin(), piece.end());
        }
        auto& slot = acc[std::move(out)];
        slot = (slot + coeff) % p_;
        std::size_t s = 0;
        while (s < slots_.size() && ++choice[s] == perms[s].size()) choice[s++] = 0;
        if (s == slots_.size()) break;
      }
    }
    std::vector<std::pair<Word, std::uint32_t>> hl;
    for (auto& [w, c] : acc)
      if (c) hl.emplace_back(w, c);
    if (hl.empty()) return;

    Counts r = remainder;
    auto with_left = [&](const Word& u) {
      Counts rest;
      fits(u, remainder, rest);
      Word v;
      exact_words(rest, v, [&](const Word& right) { emit(hl, u, right); });
    };
    with_left(Word{});
    Word u;
    bounded_words(r, u, with_left);
  }

  void emit(const std::vector<std::pair<Word, std::uint32_t>>& hl, const Word& u, const Word& v) {
    SparseEchelon::SparseRow row;
    row.reserve(hl.size());
    Word full;
    for (const auto& [w, c] : hl) {
      full = u;
      full.insert(full.end(), w.begin(), w.end());
      full.insert(full.end(), v.begin(), v.end());
      row.emplace_back(col_of_.at(full), c);
    }
    auto id = static_cast<std::uint32_t>(block_.generated++);
    SparseEchelon::SparseRow copy = row;
    if (!ech_->insert(std::move(row), id)) return;
    std::vector<NcPoly::Term> terms;
    for (const auto& [col, c] : copy) terms.emplace_back(columns_[col], c);
    block_.rows.push_back(NcPoly::from_terms(p_, std::move(terms)));
    RowOrigin o;
    o.gen = gen_;
    o.component = comp_;
    for (std::size_t s = 0; s < slots_.size(); ++s) o.key.emplace_back(slots_[s], key_[s]);
    o.left = u;
    o.right = v;
    block_.origins.push_back(std::move(o));
  }

  std::uint32_t p_;
  const std::vector<NcPoly>& gens_;
  std::vector<Var> vars_;
  std::unordered_map<Var, std::size_t> index_;
  Counts target_;
  std::uint32_t total_ = 0;
  std::vector<Word> columns_;
  std::unordered_map<Word, std::uint32_t, WordHash> col_of_;
  SpanBlock block_;
  SparseEchelon* ech_ = nullptr;

  std::size_t gen_ = 0, comp_ = 0;
  const NcPoly* h_ = nullptr;
  std::vector<Var> slots_;
  std::vector<std::uint32_t> degs_;
  std::vector<std::vector<Word>> key_;
};

std::uint32_t char_of(const std::vector<NcPoly>& gens) {
  if (gens.empty()) throw Error(ErrorKind::ShapeError, "no generators");
  std::uint32_t p = gens.front().characteristic();
  for (const auto& g : gens)
    if (g.characteristic() != p) throw Error(ErrorKind::CharMismatch, "generators mix characteristics");
  return p;
}

void check_cap(std::uint32_t degree, TMode mode) {
  const std::uint32_t cap = mode == TMode::Multilinear ? kMaxMultilinearDegree : kMaxGradedDegree;
  if (degree > cap) {
    throw Error(ErrorKind::CapExceeded, std::string(to_string(mode)) + " degree " + std::to_string(degree) +
                                            " exceeds the cap " + std::to_string(cap));
  }
}

void graded_keys(const std::vector<Var>& vars, std::size_t i, std::uint32_t left, Multidegree& cur,
                 std::vector<Multidegree>& out) {
  if (i == vars.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (std::uint32_t d = 0; d <= left; ++d) {
    if (d) cur[vars[i]] = d;
    graded_keys(vars, i + 1, left - d, cur, out);
    cur.erase(vars[i]);
  }
}

}  // namespace

std::string_view to_string(TMode m) { return m == TMode::Multilinear ? "multilinear" : "graded"; }

std::string RowOrigin::to_string() const {
  std::ostringstream os;
  os << "gen " << gen + 1 << " component " << component + 1 << " {";
  for (std::size_t i = 0; i < key.size(); ++i) {
    os << (i ? ", " : "") << var_name(key[i].first) << " -> ";
    for (std::size_t j = 0; j < key[i].second.size(); ++j) os << (j ? "|" : "") << word_text(key[i].second[j]);
  }
  os << "} left " << word_text(left) << " right " << word_text(right);
  return os.str();
}

NcPoly expand_origin(const std::vector<NcPoly>& gens, const RowOrigin& o) {
  const NcPoly& g = gens.at(o.gen);
  const std::uint32_t p = g.characteristic();
  auto comps = multihomogeneous_components(g);
  const NcPoly& h = comps.at(o.component).second;

  // Each distinct word becomes a block letter; keep the terms with the exact
  // multiplicities, then expand the blocks.
  std::map<Var, NcPoly> to_blocks, from_blocks;
  std::map<Var, std::uint32_t> need;
  std::size_t counter = 0;
  for (const auto& [y, words] : o.key) {
    std::map<Word, std::uint32_t, WordLess> mult;
    for (const auto& w : words) ++mult[w];
    NcPoly sum(p);
    for (const auto& [w, m] : mult) {
      Var b = var("__blk" + std::to_string(++counter));
      sum += NcPoly::variable(p, b);
      from_blocks[b] = NcPoly::word(p, w);
      need[b] = m;
    }
    to_blocks[y] = sum;
  }
  NcPoly s = substitute(h, to_blocks);
  std::vector<NcPoly::Term> kept;
  for (const auto& [w, c] : s.terms()) {
    std::map<Var, std::uint32_t> cnt;
    for (Var v : w) ++cnt[v];
    if (cnt == need) kept.emplace_back(w, c);
  }
  NcPoly body = substitute(NcPoly::from_terms(p, std::move(kept)), from_blocks);
  return NcPoly::word(p, o.left) * body * NcPoly::word(p, o.right);
}

std::size_t SpanBasis::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks) r += b.rows.size();
  return r;
}

SpanBasis consequence_basis(const std::vector<NcPoly>& gens, const std::vector<Var>& vars, std::uint32_t degree,
                            TMode mode) {
  const std::uint32_t p = char_of(gens);
  check_cap(degree, mode);
  std::vector<Var> vs = vars;
  if (vs.empty()) vs = var_range("x", degree);
  std::vector<Multidegree> keys;
  if (mode == TMode::Multilinear) {
    if (vs.size() != degree) throw Error(ErrorKind::ShapeError, "multilinear degree must equal the variable count");
    Multidegree md;
    for (Var v : vs) md[v] = 1;
    keys.push_back(md);
  } else {
    Multidegree cur;
    graded_keys(vs, 0, degree, cur, keys);
  }
  SpanBasis out;
  out.mode = mode;
  out.degree = degree;
  for (const auto& k : keys) {
    BlockBuilder b(p, gens, k);
    SparseEchelon ech(p, b.columns().size(), false);
    out.blocks.push_back(b.build(ech));
  }
  return out;
}

MembershipResult tideal_member(const NcPoly& f, const std::vector<NcPoly>& gens, std::uint32_t degree_bound,
                               TMode mode) {
  const std::uint32_t p = char_of(gens);
  if (f.characteristic() != p) throw Error(ErrorKind::CharMismatch, "polynomial and generators differ in characteristic");
  check_cap(degree_bound, mode);
  MembershipResult res;
  if (f.is_zero()) {
    res.member = true;
    res.certificate = MembershipCertificate{};
    return res;
  }
  const int d = f.degree();
  if (!f.is_homogeneous()) throw Error(ErrorKind::NotHomogeneous, "polynomial is not homogeneous");
  if (mode == TMode::Multilinear && !f.is_multilinear()) {
    throw Error(ErrorKind::NotHomogeneous, "multilinear mode needs a multilinear polynomial");
  }
  if (static_cast<std::uint32_t>(d) > degree_bound) {
    throw Error(ErrorKind::CapExceeded, "polynomial degree " + std::to_string(d) + " exceeds the bound " +
                                            std::to_string(degree_bound));
  }
  res.degree = static_cast<std::uint32_t>(d);
  MembershipCertificate cert;
  res.member = true;
  for (const auto& [md, part] : multihomogeneous_components(f)) {
    BlockBuilder b(p, gens, md);
    SparseEchelon ech(p, b.columns().size(), false);
    SpanBlock block = b.build(ech);
    res.rank += block.rows.size();
    res.generated += block.generated;
    res.columns += block.columns;
    SparseEchelon tracked(p, b.columns().size(), true);
    for (std::size_t i = 0; i < block.rows.size(); ++i)
      tracked.insert(*b.as_row(block.rows[i]), static_cast<std::uint32_t>(i));
    auto target = b.as_row(part);
    std::optional<SparseEchelon::SparseRow> combo;
    if (target) combo = tracked.express(*target);
    if (!combo) {
      res.member = false;
      continue;
    }
    for (const auto& [id, c] : *combo) cert.terms.emplace_back(c, block.origins[id]);
  }
  if (res.member) res.certificate = std::move(cert);
  return res;
}

NcPoly reexpand(const std::vector<NcPoly>& gens, const MembershipCertificate& c, std::uint32_t p) {
  NcPoly sum(p);
  for (const auto& [coeff, origin] : c.terms) sum += expand_origin(gens, origin).scaled(coeff);
  return sum;
}

}  // namespace pivar
