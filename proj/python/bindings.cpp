// Python bindings: matrices cross as NumPy arrays, reports as JSON text.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <vector>

#include "liewedge/channels.hpp"
#include "liewedge/io.hpp"
#include "liewedge/liealg.hpp"
#include "liewedge/report.hpp"
#include "liewedge/wedge.hpp"

namespace py = pybind11;
using namespace liewedge;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

Mat to_mat(const CArray& a) {
  if (a.ndim() != 2) throw ShapeError("expected a two-dimensional array");
  const auto r = a.unchecked<2>();
  bool real = true;
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < r.shape(1); ++j) real = real && r(i, j).imag() == 0.0;
  Mat m(static_cast<std::size_t>(r.shape(0)), static_cast<std::size_t>(r.shape(1)),
        real ? Field::real : Field::complex);
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < r.shape(1); ++j) m(i, j) = r(i, j);
  return m;
}

py::array to_array(const Mat& m) {
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())};
  if (m.is_real()) {
    py::array_t<double> out(shape);
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j).real();
    return std::move(out);
  }
  py::array_t<std::complex<double>> out(shape);
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return std::move(out);
}

std::vector<Mat> to_mats(const std::vector<CArray>& as) {
  std::vector<Mat> out;
  out.reserve(as.size());
  for (const auto& a : as) out.push_back(to_mat(a));
  return out;
}

std::vector<py::array> to_arrays(const std::vector<Mat>& ms) {
  std::vector<py::array> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(to_array(m));
  return out;
}

std::string text(const Report& r) { return dump_json(r.doc); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lie wedges of coherently controlled unital Lindblad systems";
  m.attr("SCHEMA") = std::string(kSchemaVersion);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("r3", [](const std::string& name) { return to_array(r3_named(name)); }, py::arg("name"));
  m.def("pauli_string", [](const std::string& label) { return to_array(pauli_string(label)); }, py::arg("label"));
  m.def("sigma_hat", [](const std::string& label) { return to_array(sigma_hat(label)); }, py::arg("label"));
  m.def("comm", [](const CArray& a, const CArray& b) { return to_array(comm(to_mat(a), to_mat(b))); });
  m.def("expm", [](const CArray& a) { return to_array(expm(to_mat(a))); });
  m.def("logm", [](const CArray& a) { return to_array(logm(to_mat(a))); });

  m.def(
      "lie_closure",
      [](const std::vector<CArray>& gens, double tol) { return to_arrays(lie_closure(to_mats(gens), tol).basis()); },
      py::arg("generators"), py::arg("tol") = 1e-9);
  m.def("dual_cone_contains",
        [](double a, double b, double c, const CArray& s, double tol) { return dual_cone_contains(a, b, c, to_mat(s), tol); },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"), py::arg("tol") = 1e-10);
  m.def("majorized",
        [](const CArray& s, double a, double b, double c, double tol) { return majorized(to_mat(s), a, b, c, tol); },
        py::arg("s"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tol") = 1e-10);

  m.def(
      "kraus_operators",
      [](const std::string& name, double t) {
        return to_arrays(kraus_family(default_spec(channel_from_string(name)), t).operators);
      },
      py::arg("name"), py::arg("t"));

  m.def("parse_system", [](const std::string& src) { return dump_json(system_json(parse_system(src).system)); },
        py::arg("text"));
  m.def("example_report", [](int n) { return text(example_report(n)); }, py::arg("n"));
  m.def(
      "channel_report",
      [](const std::string& name, const std::vector<double>& rates, double t) {
        return text(channel_report(channel_from_string(name), rates, t));
      },
      py::arg("name"), py::arg("rates") = std::vector<double>{}, py::arg("t") = 1.0);
  m.def(
      "wedge_report",
      [](const std::string& src, std::optional<std::size_t> samples, std::optional<std::size_t> rounds) {
        SaturationArgs args;
        args.samples = samples;
        args.rounds = rounds;
        return text(wedge_report(parse_system(src), args));
      },
      py::arg("text"), py::arg("samples") = py::none(), py::arg("rounds") = py::none());
  m.def("conditions_report", [](const std::string& src) { return text(conditions_report(parse_system(src))); },
        py::arg("text"));
  m.def(
      "semialgebra_case_report",
      [](const std::string& id) { return text(semialgebra_case_report(semialgebra_case_from_string(id))); },
      py::arg("case"));
  m.def(
      "figure_data",
      [](const std::string& figure, std::size_t steps) {
        const auto t = figure_data(figure, steps);
        return py::make_tuple(t.header, t.rows);
      },
      py::arg("figure"), py::arg("theta_steps") = 360);
}
