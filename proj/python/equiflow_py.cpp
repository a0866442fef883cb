#include "equiflow/cli.hpp"
#include "equiflow/discrepancy.hpp"
#include "equiflow/error.hpp"
#include "equiflow/flow.hpp"
#include "equiflow/scene.hpp"
#include "equiflow/section.hpp"
#include "equiflow/slope.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

namespace py = pybind11;
using namespace equiflow;

namespace {

py::int_ to_py(const BigInt& n) { return py::int_(py::str(n.str())); }

Slope make_slope(const py::object& spec) {
  if (py::isinstance<Slope>(spec)) return spec.cast<Slope>();
  if (py::isinstance<py::str>(spec)) return Slope::parse(spec.cast<std::string>());
  if (py::isinstance<py::float_>(spec) || py::isinstance<py::int_>(spec))
    return Slope::from_value(Fixed::from_double(spec.cast<double>(), Fixed::default_bits()));
  std::vector<BigInt> digits;
  for (const auto& d : spec) digits.emplace_back(py::str(d).cast<std::string>());
  return Slope::from_partial_quotients(std::move(digits));
}

SetExpr make_set(const py::object& scene) {
  if (py::isinstance<SetExpr>(scene)) return scene.cast<SetExpr>();
  const std::string text = py::isinstance<py::str>(scene)
                               ? scene.cast<std::string>()
                               : py::module_::import("json").attr("dumps")(scene).cast<std::string>();
  return parse_scene(nlohmann::json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_equiflow, m) {
  m.doc() = "Occupation times of the torus translation flow and Kronecker discrepancy";

  py::register_exception<Error>(m, "EquiflowError", PyExc_RuntimeError);

  py::class_<Slope>(m, "Slope")
      .def(py::init(&make_slope), py::arg("spec"))
      .def_static("golden", [] { return Slope::golden(); })
      .def_static("sqrt2", [] { return Slope::sqrt2(); })
      .def("__float__", &Slope::to_double)
      .def_property_readonly("value", &Slope::to_double)
      .def_property_readonly("partial_quotients",
                             [](const Slope& s) {
                               py::list out;
                               for (const auto& d : s.partial_quotients()) out.append(to_py(d));
                               return out;
                             })
      .def_property_readonly("convergents", [](const Slope& s) {
        py::list out;
        for (const auto& c : s.convergents()) out.append(py::make_tuple(to_py(c.p), to_py(c.q)));
        return out;
      });

  py::class_<SetExpr>(m, "Scene")
      .def(py::init(&make_set), py::arg("scene"))
      .def_static("load", &load_scene, py::arg("path"))
      .def("area", [](const SetExpr& s) { return area(s); })
      .def("to_json", [](const SetExpr& s) { return scene_to_json(s).dump(); });

  m.def("occupation_time",
        [](const py::object& scene, const py::object& alpha, double t, std::pair<double, double> x) {
          return occupation_time(make_set(scene), {x.first, x.second}, make_slope(alpha), t);
        },
        py::arg("scene"), py::arg("alpha"), py::arg("t"), py::arg("x") = std::pair{0.0, 0.0});

  m.def("error_curve",
        [](const py::object& scene, const py::object& alpha, std::vector<double> grid,
           std::pair<double, double> x) {
          const ErrorCurve c =
              error_curve(make_set(scene), {x.first, x.second}, make_slope(alpha), grid);
          std::vector<std::pair<double, double>> out;
          for (const auto& p : c.points) out.emplace_back(p.t, p.delta);
          return out;
        },
        py::arg("scene"), py::arg("alpha"), py::arg("grid"), py::arg("x") = std::pair{0.0, 0.0});

  m.def("tau", [](const py::object& scene, const py::object& alpha, double h) {
    return tau(make_set(scene), make_slope(alpha), h);
  }, py::arg("scene"), py::arg("alpha"), py::arg("h"));

  m.def("tau_samples", [](const py::object& scene, const py::object& alpha, int n) {
    return tau_samples(make_set(scene), make_slope(alpha), n).values;
  }, py::arg("scene"), py::arg("alpha"), py::arg("n"));

  m.def("sobolev_verdict",
        [](const py::object& scene, const py::object& alpha, double s, int levels) {
          return to_string(sobolev_seminorm(make_set(scene), make_slope(alpha), s, levels).verdict);
        },
        py::arg("scene"), py::arg("alpha"), py::arg("s"), py::arg("levels") = 8);

  m.def("kronecker_points",
        [](const py::object& alpha, long n, double x0) {
          const PointSet1D set = kronecker_points(make_slope(alpha), x0, n);
          return std::vector<double>(set.points().begin(), set.points().end());
        },
        py::arg("alpha"), py::arg("n"), py::arg("x0") = 0.0);

  m.def("star_discrepancy", [](std::vector<double> pts) {
    return star_discrepancy(PointSet1D(std::move(pts))).value;
  }, py::arg("points"));

  m.def("lp_discrepancy", [](std::vector<double> pts, double p) {
    return lp_discrepancy(PointSet1D(std::move(pts)), p).value;
  }, py::arg("points"), py::arg("p"));

  m.def("distinct_gap_count", [](const py::object& alpha, long n) {
    return distinct_gap_count(kronecker_points(make_slope(alpha), 0.0, n));
  }, py::arg("alpha"), py::arg("n"));

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line interface in process; returns (code, stdout, stderr).");

  m.attr("precision_bits") = Fixed::default_bits();
}
