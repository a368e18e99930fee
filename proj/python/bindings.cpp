#include "bnloc/errors.hpp"
#include "bnloc/expr.hpp"
#include "bnloc/io.hpp"
#include "bnloc_checks/checks.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

namespace py = pybind11;
using namespace bnloc;

namespace {

EulerTable builtin_table(const std::string& field, const std::string& theory, bool sign_flip) {
  return EulerTable::builtin(CoeffTheory::parse(theory), FieldSpec::parse(field), sign_flip);
}

/// Report JSON text and exit code; `base_dir` resolves relative custom tables.
std::pair<std::string, int> localize_text(const std::string& text, const std::string& base_dir) {
  LocalizationProblem problem = parse_problem(text);
  EulerTable table = resolve_table(problem, base_dir);
  LocalizeOutcome out = run_localize(problem, table);
  return {dump(out.report), out.exit_code};
}

}  // namespace

PYBIND11_MODULE(_bnloc, m) {
  m.doc() = "Localization calculator for cohomology of BN with Witt-ring coefficients";

  static py::exception<Error> error_type(m, "BnlocError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type.ptr())(std::string(error_name(e.code())) + ": " + e.what());
      err.attr("code") = std::string(error_name(e.code()));
      err.attr("exit_code") = exit_code(e.code());
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  m.def("witt", [](const std::string& expr, const std::string& field) {
        return eval_witt_command(expr, FieldSpec::parse(field)).to_string();
      },
      py::arg("expr"), py::arg("field") = "Q");
  m.def("ring_eval", [](const std::string& expr, const std::string& field, const std::string& theory, int truncation,
                        bool sign_flip) {
        return to_string(eval_ring(parse_expression(expr), builtin_table(field, theory, sign_flip), truncation));
      },
      py::arg("expr"), py::arg("field") = "Q", py::arg("theory") = "HW",
      py::arg("truncation") = PowerSeries::kDefaultTruncation, py::arg("sign_flip") = false);
  m.def("euler", [](const std::string& label, const std::string& field, const std::string& theory, int truncation) {
        EulerValue v = euler_class(RepLabel::parse(label), builtin_table(field, theory, false), truncation);
        return std::visit([](const auto& x) { return x.to_string(); }, v.value);
      },
      py::arg("label"), py::arg("field") = "Q", py::arg("theory") = "HW",
      py::arg("truncation") = PowerSeries::kDefaultTruncation);
  m.def("localize_text", &localize_text, py::arg("text"), py::arg("base_dir") = ".");
  m.def("selfcheck", [](std::uint64_t seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : checks::run_selfcheck(seed)) out.emplace_back(r.name, r.passed, r.detail);
        return out;
      },
      py::arg("seed") = 20240601);
}
