#include "pivar/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pivar/error.hpp"

namespace pivar {

namespace {

[[noreturn]] void syntax(std::size_t pos, const std::string& what) {
  throw Error(ErrorKind::SyntaxError, "at position " + std::to_string(pos) + ": " + what);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Tok {
  enum Kind { End, Ident, Int, Sym } kind = End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Tok> tokenize(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*^[](),").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), i});
      ++i;
    } else {
      syntax(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

std::uint64_t to_int(const Tok& t) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v > (std::uint64_t{1} << 40)) {
    syntax(t.pos, "integer out of range");
  }
  return v;
}

// Wn / En builder names.
std::optional<std::pair<char, std::uint64_t>> builder_name(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'W' && s[0] != 'E')) return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  if (s.size() > 8) return std::pair<char, std::uint64_t>{s[0], ~std::uint64_t{0}};
  return std::pair<char, std::uint64_t>{s[0], std::stoull(s.substr(1))};
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : toks_(tokenize(text)) {}

  const Tok& peek() const { return toks_[i_]; }
  const Tok& next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }
  bool is(std::string_view sym) const { return peek().kind == Tok::Sym && peek().text == sym; }
  bool accept(std::string_view sym) {
    if (!is(sym)) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) syntax(peek().pos, "expected '" + std::string(sym) + "'" + found());
  }
  std::string found() const {
    return peek().kind == Tok::End ? " but input ended" : " but found '" + peek().text + "'";
  }
  bool at_end() const { return peek().kind == Tok::End; }
  // Tokens that can start a factor, used for juxtaposition.
  bool starts_atom() const {
    return peek().kind == Tok::Ident || peek().kind == Tok::Int || is("[") || is("(");
  }
  std::size_t mark() const { return i_; }

 private:
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

class PolyParser {
 public:
  PolyParser(std::string_view text, std::uint32_t p) : c_(text), p_(p) {}

  NcPoly run() {
    NcPoly f = sum();
    if (!c_.at_end()) syntax(c_.peek().pos, "unexpected '" + c_.peek().text + "'");
    return f;
  }

 private:
  NcPoly sum() {
    bool neg = c_.accept("-");
    NcPoly f = product();
    if (neg) f = -f;
    for (;;) {
      if (c_.accept("+"))
        f += product();
      else if (c_.accept("-"))
        f -= product();
      else
        return f;
    }
  }

  NcPoly product() {
    NcPoly f = power();
    for (;;) {
      if (c_.accept("*"))
        f = f * power();
      else if (c_.starts_atom())
        f = f * power();
      else
        return f;
    }
  }

  NcPoly power() {
    NcPoly f = atom();
    while (c_.accept("^")) {
      const Tok& t = c_.peek();
      if (t.kind != Tok::Int) syntax(t.pos, "expected an exponent" + c_.found());
      auto e = to_int(c_.next());
      if (e > 4096) syntax(t.pos, "exponent too large");
      f = e == 0 ? NcPoly::constant(p_, 1) : pivar::pow(f, static_cast<std::uint32_t>(e));
    }
    return f;
  }

  Var variable_arg() {
    const Tok& t = c_.peek();
    if (t.kind != Tok::Ident) syntax(t.pos, "expected a variable" + c_.found());
    return var(c_.next().text);
  }

  NcPoly atom() {
    const Tok& t = c_.peek();
    if (t.kind == Tok::Int) return NcPoly::constant(p_, static_cast<std::int64_t>(to_int(c_.next()) % p_));
    if (t.kind == Tok::Ident) {
      Tok id = c_.next();
      auto b = builder_name(id.text);
      if (b && c_.is("(")) return builder(id, b->first, b->second);
      return NcPoly::variable(p_, var(id.text));
    }
    if (c_.accept("(")) {
      NcPoly f = sum();
      c_.expect(")");
      return f;
    }
    if (c_.accept("[")) {
      NcPoly f = sum();
      std::size_t n = 1;
      while (c_.accept(",")) {
        f = commutator(f, sum());
        ++n;
      }
      if (n < 2) syntax(c_.peek().pos, "a bracket needs at least two entries");
      c_.expect("]");
      return f;
    }
    syntax(t.pos, "expected a term" + c_.found());
  }

  NcPoly builder(const Tok& id, char kind, std::uint64_t n) {
    c_.expect("(");
    std::vector<Var> args{variable_arg()};
    while (c_.accept(",")) args.push_back(variable_arg());
    c_.expect(")");
    if (kind == 'W') {
      if (n < 1 || n > kMaxLieWordLength || args.size() != n) {
        throw Error(ErrorKind::UnknownVariableArity,
                    id.text + " at position " + std::to_string(id.pos) + " takes " + std::to_string(n) +
                        " variables, got " + std::to_string(args.size()));
      }
      return lie_word(p_, args);
    }
    if (n < 2 || n > 64 || args.size() != 2) {
      throw Error(ErrorKind::UnknownVariableArity,
                  id.text + " at position " + std::to_string(id.pos) + " needs n >= 2 and two variables");
    }
    return engel_polynomial(p_, static_cast<std::uint32_t>(n - 1), args[0], args[1]).closed;
  }

  Cursor c_;
  std::uint32_t p_;
};

// Restricted grammar for representations; nullopt on shape mismatch.
class ReprParser {
 public:
  explicit ReprParser(std::string_view text) : c_(text) {}

  std::optional<std::vector<ReprTerm>> run() {
    std::vector<ReprTerm> out;
    std::int64_t sign = c_.accept("-") ? -1 : 1;
    for (;;) {
      auto t = term(sign);
      if (!t) return std::nullopt;
      out.push_back(std::move(*t));
      if (c_.accept("+"))
        sign = 1;
      else if (c_.accept("-"))
        sign = -1;
      else
        break;
    }
    if (!c_.at_end()) return std::nullopt;
    return out;
  }

 private:
  std::optional<ReprTerm> term(std::int64_t sign) {
    std::int64_t coeff = sign;
    if (c_.peek().kind == Tok::Int) {
      coeff *= static_cast<std::int64_t>(to_int(c_.next()));
      c_.accept("*");
    }
    Word left, right;
    bool bracket = false;
    Var a = 0, b = 0;
    for (bool first = true;; first = false) {
      if (!first && !c_.accept("*") && !c_.starts_atom()) break;
      if (c_.peek().kind == Tok::Ident) {
        Var v = var(c_.next().text);
        if (c_.is("(")) return std::nullopt;
        std::uint64_t e = 1;
        if (c_.accept("^")) {
          if (c_.peek().kind != Tok::Int) return std::nullopt;
          e = to_int(c_.next());
          if (e > 4096) return std::nullopt;
        }
        (bracket ? right : left).insert((bracket ? right : left).end(), e, v);
      } else if (c_.accept("[")) {
        if (bracket || c_.peek().kind != Tok::Ident) return std::nullopt;
        a = var(c_.next().text);
        if (!c_.accept(",") || c_.peek().kind != Tok::Ident) return std::nullopt;
        b = var(c_.next().text);
        if (!c_.accept("]")) return std::nullopt;
        bracket = true;
      } else {
        return std::nullopt;
      }
    }
    if (bracket) return ReprTerm::comm(std::move(left), a, b, std::move(right), coeff);
    return ReprTerm::plain(std::move(left), coeff);
  }

  Cursor c_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Splits "name(arg, arg, ...)" at top-level commas.
std::optional<std::pair<std::string, std::vector<std::string>>> call_form(std::string_view text) {
  std::string s = trim(text);
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') return std::nullopt;
  std::string head = trim(std::string_view(s).substr(0, open));
  if (head.empty() || !std::all_of(head.begin(), head.end(), ident_char)) return std::nullopt;
  std::vector<std::string> args;
  int depth = 0;
  std::size_t start = open + 1;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth < 0) return std::nullopt;
    if (s[i] == ',' && depth == 0) {
      args.push_back(trim(std::string_view(s).substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) return std::nullopt;
  args.push_back(trim(std::string_view(s).substr(start, s.size() - 1 - start)));
  if (args.size() == 1 && args[0].empty()) args.clear();
  return std::pair{head, args};
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::SyntaxError, "expected an integer for " + what + ", got '" + s + "'");
  }
  return v;
}

// Field from an order such as 4 or 2^2, or a GF(...) literal.
FieldSpec field_from_order(const std::string& s) {
  if (s.rfind("GF", 0) == 0) return parse_field(s);
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    return FieldSpec::make(static_cast<std::uint32_t>(parse_uint(trim(s.substr(0, caret)), "a prime")),
                           static_cast<std::uint32_t>(parse_uint(trim(s.substr(caret + 1)), "a degree")));
  }
  auto q = parse_uint(s, "a field order");
  if (q < 2) throw Error(ErrorKind::NotPrime, "field order " + s + " is not a prime power");
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint32_t k = 0;
  for (auto r = q; r > 1; r /= p, ++k)
    if (r % p) throw Error(ErrorKind::NotPrime, "field order " + s + " is not a prime power");
  return FieldSpec::make(static_cast<std::uint32_t>(p), k);
}

// Field element written as a polynomial in t, e.g. "2t^2+t+1" or "-1".
std::uint32_t parse_element(const std::string& s, const FieldSpec& F) {
  Cursor c(s);
  std::uint32_t acc = 0;
  bool first = true;
  while (!c.at_end()) {
    bool neg = false;
    if (c.accept("-"))
      neg = true;
    else if (!first)
      c.expect("+");
    first = false;
    std::uint32_t coeff = F.one().packed(), mono = F.one().packed();
    bool any = false;
    if (c.peek().kind == Tok::Int) {
      coeff = F.from_int(static_cast<std::int64_t>(to_int(c.next()) % F.characteristic()));
      any = true;
      c.accept("*");
    }
    if (c.peek().kind == Tok::Ident) {
      if (c.peek().text != "t") syntax(c.peek().pos, "field elements are polynomials in t");
      c.next();
      std::uint64_t e = 1;
      if (c.accept("^")) {
        if (c.peek().kind != Tok::Int) syntax(c.peek().pos, "expected an exponent");
        e = to_int(c.next());
      }
      mono = F.pow(F.generator(), e);
      any = true;
    }
    if (!any) syntax(c.peek().pos, "expected a field element" + c.found());
    auto term = F.mul(coeff, mono);
    acc = neg ? F.sub(acc, term) : F.add(acc, term);
  }
  if (first) syntax(0, "empty field element");
  return acc;
}

}  // namespace

NcPoly parse_poly(std::string_view text, std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  return PolyParser(text, p).run();
}

std::optional<std::vector<ReprTerm>> parse_repr(std::string_view text) { return ReprParser(text).run(); }

FieldSpec parse_field(std::string_view text) {
  auto cf = call_form(text);
  if (!cf || cf->first != "GF" || cf->second.size() != 1) {
    throw Error(ErrorKind::SyntaxError, "expected GF(p) or GF(p^k), got '" + std::string(text) + "'");
  }
  const std::string& a = cf->second[0];
  auto caret = a.find('^');
  if (caret == std::string::npos) {
    auto p = parse_uint(a, "the characteristic");
    if (p > (std::uint64_t{1} << 32)) throw Error(ErrorKind::CapExceeded, "characteristic too large");
    return FieldSpec::make(static_cast<std::uint32_t>(p));
  }
  auto p = parse_uint(trim(a.substr(0, caret)), "the characteristic");
  auto k = parse_uint(trim(a.substr(caret + 1)), "the degree");
  if (p > (std::uint64_t{1} << 32) || k > 64) throw Error(ErrorKind::CapExceeded, "field too large");
  return FieldSpec::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
}

FieldMode parse_mode(std::string_view text) {
  auto cf = call_form(text);
  if (cf && cf->first == "GF") return FieldMode::finite(parse_field(text));
  if (cf && (cf->first == "char" || cf->first == "infinite") && cf->second.size() == 1) {
    auto p = parse_uint(cf->second[0], "the characteristic");
    if (p > (std::uint64_t{1} << 32) || !is_prime(p)) {
      throw Error(ErrorKind::NotPrime, cf->second[0] + " is not prime");
    }
    return FieldMode::infinite(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorKind::SyntaxError, "expected GF(q), char(p) or infinite(p), got '" + std::string(text) + "'");
}

AlgebraPtr parse_algebra(std::string_view text, const FieldSpec& field) {
  std::string s = trim(text);
  if (s == "F") return field_algebra(field);
  auto cf = call_form(s);
  if (!cf) return load_algebra_file(s);
  const auto& [head, args] = *cf;
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw Error(ErrorKind::SyntaxError, head + "(...) takes " + std::to_string(n) + " argument(s) in '" + s + "'");
    }
  };
  if (head == "C") {
    arity(1);
    return make_C(static_cast<std::uint32_t>(parse_uint(args[0], "C(N)")), field);
  }
  if (head == "M") {
    arity(1);
    return matrix_algebra(static_cast<std::uint32_t>(parse_uint(args[0], "M(n)")), field);
  }
  if (head == "A") {
    arity(1);
    return make_A(parse_algebra(args[0], field));
  }
  if (head == "op") {
    arity(1);
    return opposite(parse_algebra(args[0], field));
  }
  if (head == "B") {
    arity(3);
    return make_B(field_from_order(args[0]), field_from_order(args[1]),
                  static_cast<std::uint32_t>(parse_uint(args[2], "the twist exponent")));
  }
  if (head == "GF") return field_algebra(parse_field(s));
  throw Error(ErrorKind::SyntaxError, "unknown algebra constructor '" + head + "'");
}

AlgebraPtr parse_algebra_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::string> name;
  std::size_t dim = 0;
  FieldSpec F;
  std::vector<ProductEntry> table;
  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "algebra") {
      if (name) fail("duplicate header");
      std::string n, d, dimv, f, fv;
      if (!(ls >> n >> d >> dimv >> f >> fv) || d != "dim" || f != "field") {
        fail("expected 'algebra <name> dim <d> field GF(p^k)'");
      }
      name = n;
      dim = parse_uint(dimv, "dim");
      if (dim == 0 || dim > 4096) fail("dimension out of range");
      F = parse_field(fv);
      std::string extra;
      if (ls >> extra) fail("trailing text after header");
      continue;
    }
    if (kw != "mul") fail("unknown directive '" + kw + "'");
    if (!name) fail("'mul' before the header");
    std::string si, sj, arrow;
    if (!(ls >> si >> sj >> arrow) || arrow != "->") fail("expected 'mul i j -> ...'");
    auto idx = [&](const std::string& t) -> std::uint32_t {
      std::string u = (!t.empty() && (t[0] == 'b' || t[0] == 'e')) ? t.substr(1) : t;
      auto v = parse_uint(u, "a basis index");
      if (v < 1 || v > dim) fail("basis index " + t + " out of range 1.." + std::to_string(dim));
      return static_cast<std::uint32_t>(v - 1);
    };
    ProductEntry e;
    e.i = idx(si);
    e.j = idx(sj);
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (rest.empty()) fail("missing right-hand side");
    if (rest != "0") {
      // Terms separated by " + ", each "coef index" or just "index".
      std::vector<std::string> parts;
      std::size_t start = 0;
      for (std::size_t k = 0; k + 2 < rest.size(); ++k) {
        if (rest[k] == ' ' && rest[k + 1] == '+' && rest[k + 2] == ' ') {
          parts.push_back(trim(rest.substr(start, k - start)));
          start = k + 3;
        }
      }
      parts.push_back(trim(rest.substr(start)));
      for (const auto& part : parts) {
        std::istringstream ps(part);
        std::vector<std::string> w;
        for (std::string t; ps >> t;) w.push_back(t);
        if (w.empty() || w.size() > 2) fail("malformed term '" + part + "'");
        std::uint32_t c = w.size() == 2 ? parse_element(w[0], F) : F.one().packed();
        e.terms.emplace_back(idx(w.back()), F.element(c));
      }
    }
    table.push_back(std::move(e));
  }
  if (!name) throw Error(ErrorKind::SyntaxError, "missing 'algebra' header");
  return from_structure_constants(F, dim, table, {}, *name);
}

AlgebraPtr load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read algebra file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_text(ss.str());
}

std::vector<Var> parse_var_list(std::string_view text) {
  std::vector<Var> out;
  std::string s(text);
  std::size_t start = 0;
  for (;;) {
    auto comma = s.find(',', start);
    std::string name = trim(std::string_view(s).substr(start, comma == std::string::npos ? s.npos : comma - start));
    if (name.empty() || !ident_start(name[0]) || !std::all_of(name.begin(), name.end(), ident_char)) {
      throw Error(ErrorKind::SyntaxError, "bad variable name '" + name + "' at position " + std::to_string(start));
    }
    out.push_back(var(name));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

}  // namespace pivar
