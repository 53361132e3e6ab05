#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "pivar/certifier.hpp"
#include "pivar/error.hpp"
#include "pivar/idcheck.hpp"
#include "pivar/parser.hpp"
#include "pivar/report.hpp"
#include "pivar/tideal.hpp"

using namespace pivar;

namespace {

constexpr int kExitDefinite = 0;
constexpr int kExitInput = 1;
constexpr int kExitOpen = 2;

struct Options {
  std::string field = "GF(2)";
  std::string mode;
  std::vector<std::string> ids;
  std::string algebra;
  std::optional<std::uint32_t> bound;
  std::uint64_t budget = kDefaultBudget;
  std::uint32_t truncation = 0;
  std::uint32_t ext_bound = 4;
  bool assume_nonprime = false;
  bool machine = false;
  std::string vars;
  std::string poly;
};

std::vector<NcPoly> parse_ids(const std::vector<std::string>& ids, std::uint32_t p) {
  std::vector<NcPoly> out;
  for (const auto& s : ids) {
    try {
      out.push_back(parse_poly(s, p));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("in '") + s + "': " + (e.what() + to_string(e.kind()).size() + 2));
    }
  }
  return out;
}

void emit(const Options& o, const std::string& text, const KeyValues& kv) {
  std::cout << (o.machine ? machine_line(kv) : text);
}

int run_check(const Options& o) {
  auto a = parse_algebra(o.algebra, parse_field(o.field));
  Semantics sem;
  if (o.mode.empty() || o.mode == "finite")
    sem = Semantics::Finite;
  else if (o.mode == "infinite")
    sem = Semantics::Infinite;
  else
    throw Error(ErrorKind::SyntaxError, "--mode must be finite or infinite, got '" + o.mode + "'");
  IdentitySystem sigma(parse_ids(o.ids, a->field().characteristic()));
  auto v = satisfies_system(a, sigma, sem, o.budget);
  emit(o, format_check(a, sigma, v, o.budget), check_kv(a, v, o.budget));
  return v.holds == Holds::BudgetExceeded ? kExitOpen : kExitDefinite;
}

int run_lie(const Options& o) {
  auto a = parse_algebra(o.algebra, parse_field(o.field));
  auto c = lie_lower_chain(a);
  emit(o, format_chain(a, c), chain_kv(a, c));
  return kExitDefinite;
}

int run_engel(const Options& o) {
  auto a = parse_algebra(o.algebra, parse_field(o.field));
  auto v = is_engel(a, o.budget);
  emit(o, format_engel(a, v, o.budget), engel_kv(a, v, o.budget));
  return v.holds == Holds::BudgetExceeded ? kExitOpen : kExitDefinite;
}

int run_tideal(const Options& o) {
  TMode mode;
  if (o.mode.empty() || o.mode == "multilinear")
    mode = TMode::Multilinear;
  else if (o.mode == "graded")
    mode = TMode::Graded;
  else
    throw Error(ErrorKind::SyntaxError, "--mode must be multilinear or graded, got '" + o.mode + "'");
  const auto p = parse_field(o.field).characteristic();
  auto f = parse_ids({o.poly}, p).front();
  auto gens = parse_ids(o.ids, p);
  if (gens.empty()) throw Error(ErrorKind::ShapeError, "at least one --id generator is required");
  const auto bound = o.bound.value_or(static_cast<std::uint32_t>(std::max(f.degree(), 0)));
  auto r = tideal_member(f, gens, bound, mode);
  emit(o, format_membership(f, gens, mode, bound, r), membership_kv(mode, bound, r));
  return r.member ? kExitDefinite : kExitOpen;
}

int run_degree_sets(const Options& o) {
  auto rep = parse_repr(o.poly);
  if (!rep) {
    parse_poly(o.poly, parse_field(o.field).characteristic());  // surfaces syntax errors
    throw Error(ErrorKind::MalformedRepresentation,
                "'" + o.poly + "' is not a sum of terms u[a,b]v or plain words in single variables");
  }
  std::set<Var> vars;
  if (o.vars.empty()) {
    for (const auto& t : *rep) {
      vars.insert(t.left.begin(), t.left.end());
      vars.insert(t.right.begin(), t.right.end());
      if (t.kind == ReprTerm::Kind::Comm) vars.insert({t.i, t.j});
    }
  } else {
    for (auto v : parse_var_list(o.vars)) vars.insert(v);
  }
  auto ds = degree_sets(*rep, vars);
  emit(o, format_degree_sets(ds), degree_sets_kv(ds));
  return kExitDefinite;
}

int run_certify(const Options& o) {
  auto mode = parse_mode(o.mode);
  IdentitySystem sigma(parse_ids(o.ids, mode.characteristic()));
  CertBounds b;
  b.truncation = o.truncation;
  b.ext_bound = o.ext_bound;
  b.budget = o.budget;
  auto cert = certify(mode, sigma, b, o.assume_nonprime);
  emit(o, format_certificate(cert), certificate_kv(cert));
  return cert.verdict == Verdict::Inconclusive ? kExitOpen : kExitDefinite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial identities and Lie nilpotency of varieties of associative algebras in characteristic p"};
  app.require_subcommand(1);
  Options o;

  auto add_field = [&](CLI::App* s) { s->add_option("--field", o.field, "base field GF(p) or GF(p^k)")->capture_default_str(); };
  auto add_budget = [&](CLI::App* s) { s->add_option("--budget", o.budget, "evaluation budget")->capture_default_str(); };
  auto add_machine = [&](CLI::App* s) { s->add_flag("--machine", o.machine, "print one key=value line instead"); };
  auto add_algebra = [&](CLI::App* s) {
    s->add_option("--algebra", o.algebra, "C(N), A(...), A(F), B(q,Q,j), op(...), M(n) or a file")->required();
  };

  auto* check = app.add_subcommand("check-identity", "test identities in an algebra");
  add_algebra(check);
  add_field(check);
  check->add_option("--id", o.ids, "identity (repeatable)")->required()->allow_extra_args(false);
  check->add_option("--mode", o.mode, "finite (default) or infinite");
  add_budget(check);
  add_machine(check);

  auto* lie = app.add_subcommand("lie-nilpotent", "lower Lie chain of an algebra");
  add_algebra(lie);
  add_field(lie);
  add_machine(lie);

  auto* engel = app.add_subcommand("engel", "test the Engel condition");
  add_algebra(engel);
  add_field(engel);
  add_budget(engel);
  add_machine(engel);

  auto* tid = app.add_subcommand("tideal-member", "bounded T-ideal membership");
  tid->add_option("poly", o.poly, "target polynomial")->required();
  tid->add_option("--id", o.ids, "generator (repeatable)")->required()->allow_extra_args(false);
  tid->add_option("--mode", o.mode, "multilinear (default) or graded");
  tid->add_option("--bound", o.bound, "degree bound (defaults to the target degree)");
  add_field(tid);
  add_machine(tid);

  auto* ds = app.add_subcommand("degree-sets", "S and D degree sets of a representation");
  ds->add_option("poly", o.poly, "representation such as x[x,y]x^2 + y^5[y,z]")->required();
  ds->add_option("--vars", o.vars, "comma-separated variables (default: all)");
  add_field(ds);
  add_machine(ds);

  auto* cert = app.add_subcommand("certify", "Lie-nilpotency certificate for an identity system");
  cert->add_option("--mode", o.mode, "GF(q), char(p) or infinite(p)")->required();
  cert->add_option("--id", o.ids, "identity (repeatable)")->required()->allow_extra_args(false);
  cert->add_option("--truncation", o.truncation, "A(C_N) truncation (default: max degree)");
  cert->add_option("--ext-bound", o.ext_bound, "largest [G:F] for B(F,G,sigma)")->capture_default_str();
  cert->add_flag("--assume-nonprime", o.assume_nonprime, "assert that the variety is not verbally prime");
  add_budget(cert);
  add_machine(cert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return run_check(o);
    if (*lie) return run_lie(o);
    if (*engel) return run_engel(o);
    if (*tid) return run_tideal(o);
    if (*ds) return run_degree_sets(o);
    return run_certify(o);
  } catch (const Error& e) {
    std::cerr << "pivar: " << e.what() << "\n";
    return kExitInput;
  }
}
