#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matroot/commands.hpp"

namespace py = pybind11;
namespace cmd = matroot::commands;

namespace {

matroot::Tolerance tolerance(std::optional<double> absolute, std::optional<double> relative) {
  const matroot::Tolerance base = cmd::default_tolerance();
  return matroot::make_tolerance(absolute.value_or(base.absolute), relative.value_or(base.relative));
}

matroot::json parse(const std::string& text) {
  try {
    return matroot::json::parse(text);
  } catch (const matroot::json::parse_error& e) {
    throw matroot::ParseError(e.what());
  }
}

py::tuple wrap(const cmd::Result& r) { return py::make_tuple(r.output.dump(), r.exit_code); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-in, JSON-out bindings; see the matroot package for the Python-facing API.";

  auto base = py::register_exception<matroot::Error>(m, "MatrootError", PyExc_ValueError);
  py::register_exception<matroot::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<matroot::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<matroot::BackendError>(m, "BackendError", base.ptr());
  py::register_exception<matroot::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<matroot::ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<matroot::NumericError>(m, "NumericError", base.ptr());

  m.attr("EXIT_HOLDS") = cmd::kExitHolds;
  m.attr("EXIT_USAGE") = cmd::kExitUsage;
  m.attr("EXIT_REFUTED") = cmd::kExitRefuted;
  m.attr("EXIT_QUARANTINED") = cmd::kExitQuarantined;

  m.def(
      "decide",
      [](int k, int n, const std::string& a, std::optional<double> tol, std::optional<double> rtol) {
        return wrap(cmd::decide(k, n, a, tolerance(tol, rtol)));
      },
      py::arg("k"), py::arg("n"), py::arg("a"), py::arg("tol") = py::none(), py::arg("rtol") = py::none());

  m.def(
      "construct",
      [](const std::string& tag, int k, int n, std::optional<std::string> a, std::optional<std::string> a_imag,
         std::optional<std::uint64_t> conjugate_seed) {
        return wrap(cmd::construct({tag, k, n, std::move(a), std::move(a_imag), conjugate_seed}));
      },
      py::arg("tag"), py::arg("k"), py::arg("n"), py::arg("a") = py::none(), py::arg("a_imag") = py::none(),
      py::arg("conjugate_seed") = py::none());

  m.def(
      "verify",
      [](const std::string& matrix, int k, int n, const std::string& a, std::optional<std::string> variant,
         std::optional<double> tol, std::optional<double> rtol) {
        return wrap(cmd::verify(parse(matrix), k, n, a, tolerance(tol, rtol), std::move(variant)));
      },
      py::arg("matrix"), py::arg("k"), py::arg("n"), py::arg("a"), py::arg("variant") = py::none(),
      py::arg("tol") = py::none(), py::arg("rtol") = py::none());

  m.def(
      "search",
      [](int k, int n, const std::string& a, std::uint64_t budget, std::uint64_t seed) {
        cmd::Result r;
        {
          py::gil_scoped_release release;
          r = cmd::search(k, n, a, budget, seed, cmd::default_tolerance());
        }
        return wrap(r);
      },
      py::arg("k"), py::arg("n"), py::arg("a"), py::arg("budget"), py::arg("seed") = 0);

  m.def(
      "factor",
      [](const std::string& matrix, int n, const std::string& a, std::optional<std::string> variant,
         std::optional<double> tol, std::optional<double> rtol) {
        return wrap(cmd::factor(parse(matrix), n, a, std::move(variant), tolerance(tol, rtol)));
      },
      py::arg("matrix"), py::arg("n"), py::arg("a"), py::arg("variant") = py::none(), py::arg("tol") = py::none(),
      py::arg("rtol") = py::none());
}
