#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantorplane/construction.hpp"

namespace py = pybind11;
using namespace cantorplane;

namespace {

std::pair<std::string, std::string> interval_strings(const RationalInterval& iv) {
  return {iv.lo.get_str(), iv.hi.get_str()};
}

}  // namespace

PYBIND11_MODULE(cantorplane, m) {
  m.doc() = "Exact Cantor-set schemes in the plane and Kuratowski's function";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception<UnsupportedRegion>(m, "UnsupportedRegion", PyExc_ValueError);

  m.def("enumerate_level", &enumerate_level, py::arg("k"), py::arg("max_n"));
  m.def("successors", &successors, py::arg("d"), py::arg("max_n"));

  m.def(
      "eval_finite", [](const Support& d) { return eval_finite(d).to_string(); }, py::arg("support"),
      "f at a finite support as a reduced fraction string");
  m.def(
      "eval_cylinder", [](const std::string& word) { return interval_strings(eval_cylinder(Cylinder{word})); },
      py::arg("word"));
  m.def(
      "closure_slice", [](const Support& d) { return interval_strings(closure_slice(d).interval); }, py::arg("support"));
  m.def(
      "fiber_support",
      [](const std::string& t, int prefix_len) { return fiber_point(parse_rational(t)).support(prefix_len); },
      py::arg("t"), py::arg("prefix_len") = 16);
  m.def(
      "accumulation_test", [](const Support& d, const std::string& t) { return accumulation_test(d, parse_rational(t)); },
      py::arg("support"), py::arg("t"));
  m.def(
      "fiber_witness",
      [](const Support& d, const std::string& t, int n, int prefix_len) -> std::optional<Support> {
        auto y = fiber_witness_in_cylinder(d, parse_rational(t), n);
        if (!y) return std::nullopt;
        return y->support(prefix_len);
      },
      py::arg("support"), py::arg("t"), py::arg("n"), py::arg("prefix_len") = 16);

  m.def(
      "radial_scheme", [](int depth, int bound) { return scheme_to_json(radial_scheme(depth, bound)).dump(); },
      py::arg("depth"), py::arg("bound"), "Radial fixture scheme as JSON text");
  m.def(
      "validate_scheme",
      [](const std::string& text) {
        CantorScheme s = scheme_from_json(json::parse(text));
        json out = validate_scheme(s).to_json();
        out["collars"] = collars_pairwise_disjoint(s).to_json();
        out["h"] = h_data(s).to_json();
        return out.dump();
      },
      py::arg("scheme_json"), "Validation, collar and h reports as JSON text");
  m.def(
      "run",
      [](const std::string& config_text) {
        RunConfig cfg = RunConfig::from_json(json::parse(config_text));
        RunResult res;
        {
          py::gil_scoped_release release;
          res = run_construction(cfg);
        }
        return res.report_json(cfg).dump();
      },
      py::arg("config_json"), "Runs a construction and returns the report as JSON text");
}
