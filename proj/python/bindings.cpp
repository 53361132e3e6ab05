#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pivar/certifier.hpp"
#include "pivar/error.hpp"
#include "pivar/idcheck.hpp"
#include "pivar/parser.hpp"
#include "pivar/report.hpp"
#include "pivar/tideal.hpp"

namespace py = pybind11;
using namespace pivar;

namespace {

// pybind11 holders cannot be pointers to const.
using PyAlgebra = std::shared_ptr<StructAlgebra>;
PyAlgebra mut(const AlgebraPtr& a) { return std::const_pointer_cast<StructAlgebra>(a); }

std::vector<NcPoly> polys(const std::vector<std::string>& texts, std::uint32_t p) {
  std::vector<NcPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, p));
  return out;
}

Semantics semantics_of(const std::string& s) {
  if (s == "finite") return Semantics::Finite;
  if (s == "infinite") return Semantics::Infinite;
  throw Error(ErrorKind::SyntaxError, "semantics must be 'finite' or 'infinite'");
}

py::dict verdict_dict(const CheckVerdict& v) {
  py::dict d;
  d["holds"] = std::string(to_string(v.holds));
  d["semantics"] = std::string(to_string(v.semantics));
  d["method"] = v.method;
  d["evaluations"] = v.evaluations;
  if (v.no()) {
    d["failing_index"] = v.failing_index;
    if (v.failing) d["failing"] = v.failing->to_string();
    if (v.witness) d["witness"] = v.witness->to_string();
  }
  return d;
}

std::vector<std::string> names(const std::set<Var>& vs) {
  std::vector<std::string> out;
  for (auto v : vs) out.push_back(var_name(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polynomial identities of associative algebras in positive characteristic";

  static auto* error_type = new py::object(py::exception<Error>(m, "PivarError"));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = (*error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type->ptr(), exc.ptr());
    }
  });

  py::class_<FieldSpec>(m, "Field")
      .def(py::init([](std::uint32_t p, std::uint32_t k) { return FieldSpec::make(p, k); }), py::arg("p"),
           py::arg("k") = 1)
      .def_static("parse", &parse_field)
      .def_property_readonly("characteristic", &FieldSpec::characteristic)
      .def_property_readonly("degree", &FieldSpec::degree)
      .def_property_readonly("order", &FieldSpec::order)
      .def_property_readonly("modulus", &FieldSpec::modulus)
      .def("frobenius", &FieldSpec::frobenius)
      .def("__eq__", [](const FieldSpec& a, const FieldSpec& b) { return a == b; })
      .def("__repr__", &FieldSpec::name);

  py::class_<NcPoly>(m, "Poly")
      .def(py::init([](const std::string& text, std::uint32_t p) { return parse_poly(text, p); }), py::arg("text"),
           py::arg("p"))
      .def_property_readonly("characteristic", &NcPoly::characteristic)
      .def_property_readonly("degree", &NcPoly::degree)
      .def_property_readonly("variables", [](const NcPoly& f) { return names(f.variables()); })
      .def("is_multilinear", &NcPoly::is_multilinear)
      .def("is_homogeneous", &NcPoly::is_homogeneous)
      .def("terms", [](const NcPoly& f) {
        std::vector<std::pair<std::vector<std::string>, std::uint32_t>> out;
        for (const auto& [w, c] : f.terms()) {
          std::vector<std::string> ws;
          for (auto v : w) ws.push_back(var_name(v));
          out.emplace_back(ws, c);
        }
        return out;
      })
      .def("__add__", [](const NcPoly& a, const NcPoly& b) { return a + b; })
      .def("__sub__", [](const NcPoly& a, const NcPoly& b) { return a - b; })
      .def("__mul__", [](const NcPoly& a, const NcPoly& b) { return a * b; })
      .def("__neg__", [](const NcPoly& a) { return -a; })
      .def("__pow__", [](const NcPoly& a, std::uint32_t e) { return pow(a, e); })
      .def("__eq__", [](const NcPoly& a, const NcPoly& b) { return a == b; })
      .def("__str__", &NcPoly::to_string)
      .def("__repr__", [](const NcPoly& f) { return "Poly('" + f.to_string() + "')"; });

  m.def("commutator", &commutator);
  m.def("lie_word", [](std::uint32_t p, const std::vector<std::string>& vs) {
    std::vector<Var> v;
    for (const auto& s : vs) v.push_back(var(s));
    return lie_word(p, v);
  });
  m.def(
      "engel_polynomial",
      [](std::uint32_t p, std::uint32_t n, const std::string& x, const std::string& y) {
        auto e = engel_polynomial(p, n, var(x), var(y));
        return std::make_pair(e.recursive, e.closed);
      },
      "W_{n+1}(x, y, ..., y) as (recursive, closed)");
  m.def(
      "degree_sets",
      [](const std::string& text, const std::vector<std::string>& vs) {
        auto rep = parse_repr(text);
        if (!rep) throw Error(ErrorKind::MalformedRepresentation, "not a flank-bracket-flank sum: " + text);
        std::set<Var> vars;
        for (const auto& s : vs) vars.insert(var(s));
        auto ds = degree_sets(*rep, vars);
        py::object D = py::none();
        if (ds.D) D = py::cast(*ds.D);
        return py::make_tuple(ds.S, D);
      },
      py::arg("text"), py::arg("vars"));

  py::class_<StructAlgebra, PyAlgebra>(m, "Algebra")
      .def_property_readonly("name", &StructAlgebra::name)
      .def_property_readonly("dim", &StructAlgebra::dim)
      .def_property_readonly("field", &StructAlgebra::field)
      .def_property_readonly("labels", &StructAlgebra::labels)
      .def("__repr__", [](const StructAlgebra& a) { return a.name() + " over " + a.field().name(); });

  m.def(
      "algebra", [](const std::string& expr, const FieldSpec& f) { return mut(parse_algebra(expr, f)); },
      py::arg("expr"), py::arg("field") = FieldSpec::make(2),
      "C(N), A(...), A(F), B(q,Q,j), op(...), M(n) or a path to an algebra file");
  m.def("algebra_from_text", [](const std::string& text) { return mut(parse_algebra_text(text)); });
  m.def("valid_sigmas", &valid_sigmas);

  m.def("lie_chain", [](const PyAlgebra& a) {
    auto c = lie_lower_chain(a);
    py::dict d;
    d["dims"] = c.dims;
    d["nilpotent"] = c.nilpotency_class.has_value();
    d["class"] = c.nilpotency_class ? py::cast(*c.nilpotency_class) : py::none();
    return d;
  });
  m.def(
      "is_engel", [](const PyAlgebra& a, std::uint64_t budget) { return verdict_dict(is_engel(a, budget)); },
      py::arg("algebra"), py::arg("budget") = kDefaultBudget);
  m.def(
      "check_identities",
      [](const PyAlgebra& a, const std::vector<std::string>& ids, const std::string& sem, std::uint64_t budget) {
        IdentitySystem sigma(polys(ids, a->field().characteristic()));
        return verdict_dict(satisfies_system(a, sigma, semantics_of(sem), budget));
      },
      py::arg("algebra"), py::arg("ids"), py::arg("semantics") = "finite", py::arg("budget") = kDefaultBudget);

  m.def(
      "tideal_member",
      [](const std::string& f, const std::vector<std::string>& gens, std::uint32_t p, std::optional<std::uint32_t> bound,
         const std::string& mode) {
        auto target = parse_poly(f, p);
        auto g = polys(gens, p);
        TMode tm = mode == "graded" ? TMode::Graded : TMode::Multilinear;
        if (mode != "graded" && mode != "multilinear") {
          throw Error(ErrorKind::SyntaxError, "mode must be 'multilinear' or 'graded'");
        }
        auto r = tideal_member(target, g, bound.value_or(static_cast<std::uint32_t>(std::max(target.degree(), 0))), tm);
        py::dict d;
        d["member"] = r.member;
        d["rank"] = r.rank;
        d["columns"] = r.columns;
        d["generated"] = r.generated;
        d["certificate_rows"] = r.certificate ? r.certificate->terms.size() : 0;
        d["reexpands"] = r.certificate ? reexpand(g, *r.certificate, p) == target : false;
        return d;
      },
      py::arg("f"), py::arg("gens"), py::arg("p"), py::arg("bound") = py::none(), py::arg("mode") = "multilinear");

  m.def(
      "certify",
      [](const std::string& mode, const std::vector<std::string>& ids, std::uint32_t truncation,
         std::uint32_t ext_bound, std::uint64_t budget, bool assume_nonprime) {
        auto fm = parse_mode(mode);
        IdentitySystem sigma(polys(ids, fm.characteristic()));
        auto c = certify(fm, sigma, {truncation, ext_bound, budget}, assume_nonprime);
        py::dict d;
        d["verdict"] = std::string(to_string(c.verdict));
        d["reason"] = c.reason;
        d["nonprime"] = c.nonprime ? py::cast(c.nonprime->to_string()) : py::none();
        py::list cat;
        for (const auto& r : c.catalog) {
          auto row = verdict_dict(r.verdict);
          row["algebra"] = r.entry.algebra->name();
          row["tag"] = r.entry.tag;
          cat.append(row);
        }
        d["catalog"] = cat;
        d["report"] = format_certificate(c);
        d["machine"] = machine_line(certificate_kv(c));
        return d;
      },
      py::arg("mode"), py::arg("ids"), py::arg("truncation") = 0, py::arg("ext_bound") = 4,
      py::arg("budget") = kDefaultBudget, py::arg("assume_nonprime") = false);
}
