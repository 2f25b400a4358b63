// Copyright 2026 The bingham-moments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <memory>
#include <string>

#include "bingham/errbound.hpp"
#include "bingham/errors.hpp"
#include "bingham/evaluator.hpp"
#include "bingham/oracle.hpp"
#include "bingham/tables.hpp"

namespace py = pybind11;
using namespace bingham;

namespace {

// Accepts six upper-triangle entries (B11 B22 B33 B12 B13 B23) or a 3x3 nested
// sequence / array.
BinghamParam to_param(const py::object& b) {
  const auto outer = py::reinterpret_borrow<py::sequence>(b);
  if (py::len(outer) == 6) {
    std::array<double, 6> e{};
    for (std::size_t i = 0; i < 6; ++i) e[i] = outer[i].cast<double>();
    return {e[0], e[1], e[2], e[3], e[4], e[5]};
  }
  if (py::len(outer) != 3) throw DomainError("B must be 3x3 or six upper-triangle entries");
  Mat3 m{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = outer[i].cast<py::sequence>();
    if (py::len(row) != 3) throw DomainError("B must be 3x3");
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = row[j].cast<double>();
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(m[i][j] - m[j][i]) > 1e-12 * (1.0 + std::abs(m[i][j])))
        throw DomainError("B must be symmetric");
  return BinghamParam::from_matrix(m);
}

py::dict moment_dict(double log_z, const std::array<double, kMonomialCount>& values) {
  py::dict moments;
  const auto& monos = all_monomials();
  for (std::size_t k = 0; k < kMonomialCount; ++k)
    moments[py::make_tuple(monos[k].n1, monos[k].n2, monos[k].n3)] = values[k];
  py::dict out;
  out["log_z"] = log_z;
  out["moments"] = moments;
  return out;
}

Wrt parse_wrt(const std::string& s) {
  if (s == "b1") return Wrt::kB1;
  if (s == "b2") return Wrt::kB2;
  throw DomainError("wrt must be 'b1' or 'b2'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partition function and moments of the Bingham distribution on the sphere";

  py::register_exception<TableError>(m, "TableError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<MomentTables, std::shared_ptr<MomentTables>>(m, "Tables")
      .def_property_readonly("d", [](const MomentTables& t) { return t.header.d; })
      .def_property_readonly("n2", [](const MomentTables& t) { return t.header.n2; })
      .def_property_readonly("checksum", [](const MomentTables& t) { return t.header.checksum; })
      .def("save", [](const MomentTables& t, const std::filesystem::path& p) {
        return save_tables(t, p);
      });

  m.def(
      "load_tables",
      [](std::optional<std::filesystem::path> path) {
        return std::make_shared<MomentTables>(load_tables(resolve_table_path(path)));
      },
      py::arg("path") = py::none(),
      "Load a table file; without a path, $BINGHAM_TABLES is used.");
  m.def(
      "generate_tables",
      [](bool tiny) {
        py::gil_scoped_release release;
        return std::make_shared<MomentTables>(
            generate_tables(tiny ? TableConfig::tiny() : TableConfig{}));
      },
      py::arg("tiny") = false, "Build tables (default config takes ~30 s per core).");

  py::class_<Evaluator>(m, "Evaluator")
      .def(py::init([](std::shared_ptr<MomentTables> t, int n1, int n2, bool linear_gm) {
             EvalParams p;
             p.n1 = n1;
             p.n2 = n2;
             if (linear_gm) p.gm_interpolation = series::GmInterpolation::kLinear;
             return Evaluator(std::move(t), p);
           }),
           py::arg("tables"), py::arg("n1") = 5, py::arg("n2") = 5, py::arg("linear_gm") = false)
      .def_property_readonly("d", &Evaluator::d)
      .def(
          "moments",
          [](const Evaluator& ev, const py::object& b) {
            const MomentSet s = ev.moments(to_param(b));
            return moment_dict(s.log_z, s.moments);
          },
          py::arg("B"), "log Z and every moment of order <= 4, keyed by exponent triple.")
      .def(
          "second_moments",
          [](const Evaluator& ev, const py::object& b) {
            return ev.moments(to_param(b)).second_moments();
          },
          py::arg("B"))
      .def(
          "log_partition",
          [](const Evaluator& ev, const py::object& b) { return ev.log_partition(to_param(b)); },
          py::arg("B"))
      .def("z_diag", &Evaluator::z_diag, py::arg("n"), py::arg("m"), py::arg("b1"), py::arg("b2"))
      .def(
          "moment_derivative",
          [](const Evaluator& ev, int n, int mm, const std::string& wrt, double b1, double b2) {
            return ev.moment_derivative(n, mm, parse_wrt(wrt), b1, b2);
          },
          py::arg("n"), py::arg("m"), py::arg("wrt"), py::arg("b1"), py::arg("b2"));

  m.def(
      "theorem1_bound",
      [](double d, int N, int n, int mm) {
        const auto r = errbound::theorem1_bound(d, N, n, mm);
        py::dict out;
        out["bound"] = r.bound;
        out["term1"] = r.term1;
        out["term2"] = r.term2;
        out["term3"] = r.term3;
        return out;
      },
      py::arg("d"), py::arg("N"), py::arg("n"), py::arg("m"));
  m.def(
      "suggest_params",
      [](double target) {
        const auto s = errbound::suggest_params(target);
        return py::make_tuple(s.d, s.n1, s.n2);
      },
      py::arg("target"), "(d, N1, N2) from the published parameter table.");

  m.def(
      "oracle_z",
      [](int n, int mm, double b1, double b2, double tol) {
        oracle::QuadratureSpec spec;
        spec.abs_tol = tol;
        py::gil_scoped_release release;
        return oracle::z_nm_oracle(n, mm, b1, b2, spec);
      },
      py::arg("n"), py::arg("m"), py::arg("b1"), py::arg("b2"), py::arg("tol") = 1e-11);
  m.def(
      "oracle_moments",
      [](const py::object& b, double tol) {
        oracle::QuadratureSpec spec;
        spec.abs_tol = tol;
        const BinghamParam p = to_param(b);
        oracle::GeneralMomentSet o;
        {
          py::gil_scoped_release release;
          o = oracle::general_oracle_all(p, spec);
        }
        std::array<double, kMonomialCount> v{};
        for (std::size_t k = 0; k < kMonomialCount; ++k) v[k] = o.shifted[k] / o.shifted[0];
        return moment_dict(std::log(o.shifted[0]) + o.shift, v);
      },
      py::arg("B"), py::arg("tol") = 1e-11);
}
