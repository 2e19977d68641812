#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ptlsep/closures.hpp"
#include "ptlsep/engine.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"

namespace py = pybind11;
using namespace ptlsep;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
  return parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Word to_word(const py::object& w) {
  if (py::isinstance<py::str>(w)) return char_word(w.cast<std::string>());
  return w.cast<std::vector<Symbol>>();
}

SeparateOptions options(std::optional<std::size_t> budget, bool parallel, const py::object& resume) {
  SeparateOptions opts;
  opts.budget = budget;
  opts.parallel = parallel;
  if (!resume.is_none()) opts.resume = resume_from_json(from_py(resume));
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PTL separability of regular and context-free languages";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(to_string(e.kind()), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  py::class_<LangRef>(m, "Language")
      .def_static("from_grammar", [](const std::string& text) { return LangRef(parse_grammar(text)); },
                  py::arg("text"))
      .def_static("from_nfa", [](const py::object& j) { return LangRef(nfa_from_json(from_py(j))); },
                  py::arg("nfa"))
      .def_static("load", &load_language, py::arg("path"))
      .def_property_readonly("is_regular", &LangRef::is_regular)
      .def_property_readonly("alphabet",
                             [](const LangRef& l) {
                               const Alphabet& a = l.alphabet();
                               return std::vector<Symbol>(a.begin(), a.end());
                             })
      .def("accepts", [](const LangRef& l, const py::object& w) { return member(l, to_word(w)); },
           py::arg("word"))
      .def("is_empty", [](const LangRef& l) { return is_empty(l); })
      .def("to_nfa",
           [](const LangRef& l) {
             if (!l.is_regular()) throw Error(ErrorKind::invalid_argument, "language is not regular");
             return to_py(to_json(l.nfa()));
           })
      .def("to_text",
           [](const LangRef& l) { return l.is_regular() ? to_json(l.nfa()).dump(2) : format_grammar(l.cfg()); })
      .def("complement",
           [](const LangRef& l) {
             if (!l.is_regular()) throw Error(ErrorKind::invalid_argument, "language is not regular");
             return LangRef(complement(l.nfa()));
           })
      .def("__repr__", [](const LangRef& l) {
        return std::string("<Language ") + (l.is_regular() ? "nfa" : "cfg") + ">";
      });

  m.def(
      "separate",
      [](const LangRef& i, const LangRef& e, std::optional<std::size_t> budget, bool parallel,
         const py::object& resume) {
        SeparateOptions opts = options(budget, parallel, resume);
        py::gil_scoped_release release;
        Outcome out = separate(i, e, opts);
        py::gil_scoped_acquire acquire;
        return to_py(to_json(out));
      },
      py::arg("i"), py::arg("e"), py::arg("budget") = py::none(), py::arg("parallel") = false,
      py::arg("resume") = py::none(), "Decides PTL separability; returns the result as a dict.");
  m.def(
      "validate",
      [](const py::object& cert, const LangRef& i, const LangRef& e, std::size_t depth) {
        return validate(certificate_from_json(from_py(cert)), i, e, depth);
      },
      py::arg("certificate"), py::arg("i"), py::arg("e"), py::arg("depth") = 2);
  m.def(
      "is_ptl",
      [](const LangRef& l, std::optional<std::size_t> budget) {
        if (!l.is_regular()) throw Error(ErrorKind::invalid_argument, "is_ptl needs a regular language");
        SeparateOptions opts;
        opts.budget = budget;
        return to_py(to_json(separate(l, complement(l.nfa()), opts)));
      },
      py::arg("l"), py::arg("budget") = py::none());
  m.def("diagonal", [](const LangRef& l) { return diagonal(l); }, py::arg("l"));
  m.def("diagonal_via_sup", &diagonal_via_sup, py::arg("l"));
  m.def("sup", &sup_decide, py::arg("l"), py::arg("order"));
  m.def("sup_via_separability", &sup_via_separability, py::arg("l"), py::arg("order"));
  m.def("downward_closure", [](const LangRef& l) { return LangRef(downward_closure(l)); }, py::arg("l"));
  m.def(
      "ideals",
      [](const LangRef& l) {
        if (!l.is_regular()) throw Error(ErrorKind::invalid_argument, "ideals needs a regular language");
        py::list out;
        for (const auto& ideal : ideal_decompose(l.nfa())) out.append(to_py(to_json(ideal)));
        return out;
      },
      py::arg("d"));
  m.def(
      "contains_pattern",
      [](const LangRef& l, const py::object& p) { return contains_pattern(l, pattern_from_json(from_py(p))); },
      py::arg("l"), py::arg("pattern"));
  m.def(
      "simon_equiv",
      [](const py::object& v, const py::object& w, std::size_t n) { return simon_equiv(to_word(v), to_word(w), n); },
      py::arg("v"), py::arg("w"), py::arg("n"));
}
