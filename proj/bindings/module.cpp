#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "czlab/compactness.hpp"
#include "czlab/constructions.hpp"
#include "czlab/factorization.hpp"
#include "czlab/operators.hpp"
#include "czlab/spaces.hpp"
#include "czlab/symbols.hpp"

namespace py = pybind11;
using namespace czlab;

PYBIND11_MODULE(_czlab, m) {
  m.doc() = "Cauchy integral commutators on Morrey spaces: grids, kernels, norms, constructions";

  py::register_exception<Error>(m, "CzlabError");

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("center"), py::arg("radius"))
      .def_readonly("center", &Interval::center)
      .def_readonly("radius", &Interval::radius)
      .def("left", &Interval::left)
      .def("right", &Interval::right)
      .def("measure", &Interval::measure)
      .def("scaled", &Interval::scaled)
      .def_static("from_endpoints", &Interval::from_endpoints)
      .def("__repr__", [](const Interval& I) {
        std::ostringstream s;
        s << "Interval(center=" << I.center << ", radius=" << I.radius << ")";
        return s.str();
      });

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<double, double, std::vector<cplx>>(), py::arg("origin"), py::arg("step"),
           py::arg("values"))
      .def_static("zeros", &GridFunction::zeros)
      .def_static("indicator", &GridFunction::indicator)
      .def_property_readonly("origin", &GridFunction::origin)
      .def_property_readonly("step", &GridFunction::step)
      .def("__len__", &GridFunction::size)
      .def("midpoint", &GridFunction::midpoint)
      .def("window", &GridFunction::window)
      .def("value_at", &GridFunction::value_at)
      .def("values",
           [](const GridFunction& f) {
             return std::vector<cplx>(f.values().begin(), f.values().end());
           })
      .def("to_csv", [](const GridFunction& f) {
        std::ostringstream out;
        write_csv(f, out);
        return out.str();
      });

  m.def("integrate", py::overload_cast<const GridFunction&, const Interval&>(&integrate));
  m.def("integrate", py::overload_cast<const GridFunction&>(&integrate));
  m.def("lp_norm", py::overload_cast<const GridFunction&, double, const Interval&>(&lp_norm));
  m.def("lp_norm", py::overload_cast<const GridFunction&, double>(&lp_norm));
  m.def("rearrangement_value", &rearrangement_value);
  m.def("translate", [](const GridFunction& f, double z) {
    Translated t = translate(f, z);
    return py::make_tuple(t.fn, t.applied_shift, t.snap_residual);
  });

  py::class_<LipschitzCurve>(m, "LipschitzCurve")
      .def(py::init<std::vector<std::pair<double, double>>>(), py::arg("knots"))
      .def("eval", &LipschitzCurve::eval)
      .def_property_readonly("lip_const", &LipschitzCurve::lip_const);
  m.def("flat_curve", &flat_curve);
  m.def("sawtooth_curve", &sawtooth_curve);
  m.def("bump_curve", &bump_curve);
  m.def("cauchy_kernel", &cauchy_kernel);

  m.def("pv_cauchy", &pv_cauchy);
  m.def("truncated_cauchy", &truncated_cauchy);
  m.def("adjoint_cauchy", &adjoint_cauchy);
  m.def("commutator", &commutator);
  m.def("hl_maximal", &hl_maximal);
  m.def("pv_cauchy_image", &pv_cauchy_image);
  m.def("commutator_image", &commutator_image);

  py::class_<MorreyParams>(m, "MorreyParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("lambda_"))
      .def_readonly("p", &MorreyParams::p)
      .def_readonly("lambda_", &MorreyParams::lambda)
      .def_property_readonly("conjugate", &MorreyParams::conjugate);

  py::class_<IntervalLattice>(m, "IntervalLattice")
      .def_static("dyadic", &IntervalLattice::dyadic, py::arg("window"), py::arg("step"),
                  py::arg("max_depth"), py::arg("offsets") = 4)
      .def("size", [](const IntervalLattice& lat) { return lat.entries().size(); });

  m.def("morrey_norm", &morrey_norm);
  m.def("mean_oscillation", &mean_oscillation);
  m.def("bmo_norm", &bmo_norm);
  m.def("median", &median);
  m.def("local_mean_oscillation", &local_mean_oscillation);
  m.def("is_block", &is_block);
  m.def("h_norm_upper", &h_norm_upper);

  py::class_<Atom>(m, "Atom")
      .def_readonly("f", &Atom::f)
      .def_readonly("interval", &Atom::interval);
  m.def("make_atom", &make_atom, py::arg("f"), py::arg("interval"), py::arg("rescale") = false);

  m.def("heaviside_symbol", &heaviside_symbol);
  m.def("clipped_log_symbol", &clipped_log_symbol);
  m.def("smooth_bump_symbol", &smooth_bump_symbol, py::arg("window"), py::arg("step"),
        py::arg("halfwidth") = 1.0);
  m.def("sawtooth_symbol", &sawtooth_symbol, py::arg("window"), py::arg("step"),
        py::arg("lip") = 1.0, py::arg("period") = 1.0);
  m.def("random_step_symbol", &random_step_symbol, py::arg("window"), py::arg("step"),
        py::arg("seed"), py::arg("pieces") = 12, py::arg("support") = Interval(0.0, 4.0),
        py::arg("amplitude") = 1.0);
}
