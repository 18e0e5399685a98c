#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stratifold/decisions.hpp"
#include "stratifold/errors.hpp"
#include "stratifold/pipeline.hpp"

namespace py = pybind11;
using namespace stratifold;

namespace {

Budget make_budget(int insertions, int max_length) {
  Budget b;
  b.insertions = insertions;
  b.max_length = max_length;
  return b;
}

py::dict word_result(const Solver& s, const WordResult& r) {
  py::dict d;
  d["answer"] = to_string(r.answer);
  d["certified"] = r.certified;
  d["word"] = s.presentation().format_word(r.word);
  d["reason"] = r.reason;
  if (r.verdict) d["splices"] = r.verdict->trace.size();
  return d;
}

py::dict orders(const Solver& s) {
  const auto& a = s.orders();
  const auto& blacks = s.stratifold().graph.blacks();
  py::dict sigma, abelian;
  for (std::size_t b = 0; b < blacks.size(); ++b) {
    sigma[py::str(blacks[b].name)] = a.sigma[b];
    abelian[py::str(blacks[b].name)] = a.abelian_order[b];
  }
  std::vector<std::string> undetermined;
  for (int b : a.undetermined) undetermined.push_back(blacks[b].name);
  py::dict d;
  d["exact"] = a.exact();
  d["sigma"] = sigma;
  d["abelian_orders"] = abelian;
  d["undetermined"] = undetermined;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Word problem for fundamental groups of 2-stratifolds";

  // The module keeps the type alive.
  static PyObject* error_type = py::exception<Error>(m, "StratifoldError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<StratifoldGraph>(m, "Graph")
      .def_property_readonly("whites", [](const StratifoldGraph& g) {
        std::vector<std::string> out;
        for (const auto& w : g.whites()) out.push_back(w.name);
        return out;
      })
      .def_property_readonly("blacks", [](const StratifoldGraph& g) {
        std::vector<std::string> out;
        for (const auto& b : g.blacks()) out.push_back(b.name);
        return out;
      })
      .def("__str__", &serialize_graph);

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); }, py::arg("text"));
  m.def("load_graph", &load_graph, py::arg("path"));

  py::class_<Solver>(m, "Solver")
      .def(py::init([](const StratifoldGraph& g, int insertions, int max_length) {
             return Solver(g, make_budget(insertions, max_length));
           }),
           py::arg("graph"), py::arg("insertions") = Budget{}.insertions,
           py::arg("max_length") = Budget{}.max_length)
      .def("solve", [](const Solver& s, const std::string& w) { return word_result(s, s.solve_text(w)); },
           py::arg("word"))
      .def("orders", &orders)
      .def("generators", [](const Solver& s) {
        std::vector<std::string> out;
        for (const auto& g : s.presentation().generators()) out.push_back(g.name);
        return out;
      })
      .def("relators", [](const Solver& s) {
        std::vector<std::string> out;
        for (const auto& r : s.presentation().relators()) out.push_back(s.presentation().format_word(r.word));
        return out;
      })
      .def("is_abelian", [](const Solver& s) { return is_abelian(s); })
      .def("is_simply_connected", [](const Solver& s) { return is_simply_connected(s); })
      .def("wedge_count", [](const Solver& s) { return wedge_check(s); });

  m.def("word_problem",
        [](const StratifoldGraph& g, const std::string& w, int insertions, int max_length) {
          const Solver s(g, make_budget(insertions, max_length));
          return word_result(s, s.solve_text(w));
        },
        py::arg("graph"), py::arg("word"), py::arg("insertions") = Budget{}.insertions,
        py::arg("max_length") = Budget{}.max_length);
}
