#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curveflow/commands.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"
#include "curveflow/reference.hpp"
#include "curveflow/soliton.hpp"
#include "curveflow/variation.hpp"

namespace py = pybind11;
using namespace curveflow;

namespace {

std::vector<std::pair<double, double>> xy(const std::vector<Vec2>& pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (Vec2 p : pts) out.emplace_back(p.x, p.y);
  return out;
}

PlaneCurve polyline(const std::vector<std::pair<double, double>>& pts, bool closed) {
  std::vector<Vec2> v;
  v.reserve(pts.size());
  for (auto [x, y] : pts) v.push_back({x, y});
  return make_polyline(std::move(v), closed ? Boundary::Closed : Boundary::FreeEnds);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature-flow solitons and critical curves";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  auto no_soliton = py::register_exception<NoSolitonError>(m, "NoSolitonError", error.ptr());
  py::register_exception<DegenerateEnergy>(m, "DegenerateEnergy", no_soliton.ptr());
  py::register_exception<StiffnessError>(m, "StiffnessError", error.ptr());
  py::register_exception<StepTooLarge>(m, "StepTooLarge", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  (void)domain;

  py::enum_<EnergyKind>(m, "EnergyKind")
      .value("Power", EnergyKind::Power)
      .value("Entropy", EnergyKind::Entropy)
      .value("Log", EnergyKind::Log);

  py::class_<CurvatureEnergy>(m, "CurvatureEnergy")
      .def_static("power", &CurvatureEnergy::power, py::arg("p"), py::arg("lam"))
      .def_static("entropy", &CurvatureEnergy::entropy, py::arg("lam"))
      .def_static("log", &CurvatureEnergy::log, py::arg("lam"))
      .def_readonly("kind", &CurvatureEnergy::kind)
      .def_readonly("p", &CurvatureEnergy::p)
      .def_readonly("lam", &CurvatureEnergy::lambda)
      .def("is_degenerate", &CurvatureEnergy::is_degenerate)
      .def("__eq__", [](const CurvatureEnergy& a, const CurvatureEnergy& b) { return a == b; })
      .def("__repr__", [](const CurvatureEnergy& e) {
        const char* kind = e.kind == EnergyKind::Power ? "power" : e.kind == EnergyKind::Entropy ? "entropy" : "log";
        return "CurvatureEnergy(" + std::string(kind) + ", p=" + std::to_string(e.p) +
               ", lam=" + std::to_string(e.lambda) + ")";
      });

  py::enum_<FlowMode>(m, "FlowMode").value("Power", FlowMode::Power).value("Log", FlowMode::Log);

  py::class_<SolitonProblem>(m, "SolitonProblem")
      .def_static("power_flow",
                  [](double p, double a, double b) { return SolitonProblem::power_flow(p, a, b); },
                  py::arg("p"), py::arg("a") = 1.0, py::arg("b") = 0.0)
      .def_static("log_flow", [](double a, double b) { return SolitonProblem::log_flow(a, b); },
                  py::arg("a") = 1.0, py::arg("b") = 0.0)
      .def_readonly("mode", &SolitonProblem::mode)
      .def_readonly("p", &SolitonProblem::p)
      .def_readonly("a", &SolitonProblem::a)
      .def_readonly("b", &SolitonProblem::b)
      .def_property_readonly("V", [](const SolitonProblem& s) { return std::make_pair(s.V.x, s.V.y); });

  m.def("energy_from_flow", &energy_from_flow);
  m.def("flow_from_energy", &flow_from_energy, py::arg("energy"), py::arg("d"));
  m.def("el_residual", &el_residual);
  m.def("first_integral", &first_integral);
  m.def("curvature_range", [](const CurvatureEnergy& e, double d) {
    const CurvatureRange r = curvature_range(e, d);
    return py::dict(py::arg("lo") = r.lo, py::arg("hi") = r.hi, py::arg("lo_open") = r.lo_open,
                    py::arg("hi_unbounded") = r.hi_unbounded, py::arg("vertex") = r.vertex);
  });

  py::class_<PlaneCurve>(m, "PlaneCurve")
      .def_property_readonly("points", [](const PlaneCurve& c) { return xy(c.points); })
      .def_property_readonly("normals", [](const PlaneCurve& c) { return xy(c.normals); })
      .def_readonly("arc", &PlaneCurve::arc)
      .def_readonly("kappas", &PlaneCurve::kappas)
      .def_property_readonly("closed", &PlaneCurve::closed)
      .def("__len__", &PlaneCurve::size)
      .def("to_csv", [](const PlaneCurve& c) { return curve_to_csv(c); });
  m.def("polyline", &polyline, py::arg("points"), py::arg("closed") = false);
  m.def("curve_from_csv", [](const std::string& text, bool closed) {
    return curve_from_csv(text, closed ? Boundary::Closed : Boundary::FreeEnds);
  }, py::arg("text"), py::arg("closed") = false);

  py::class_<CurvatureProfile>(m, "CurvatureProfile")
      .def_property_readonly("s", [](const CurvatureProfile& p) {
        std::vector<double> v;
        for (const auto& smp : p.samples) v.push_back(smp.s);
        return v;
      })
      .def_property_readonly("kappa", [](const CurvatureProfile& p) {
        std::vector<double> v;
        for (const auto& smp : p.samples) v.push_back(smp.kappa);
        return v;
      })
      .def_readonly("d", &CurvatureProfile::d)
      .def_readonly("first_integral_drift", &CurvatureProfile::first_integral_drift)
      .def_readonly("truncated", &CurvatureProfile::truncated);
  m.def("integrate_profile",
        [](const CurvatureEnergy& e, double d, double half_span, double tol) {
          return integrate_profile(e, d, half_span, tol);
        },
        py::arg("energy"), py::arg("d"), py::arg("half_span"), py::arg("tol") = 1e-10);
  m.def("reconstruct_curve", &reconstruct_curve);
  m.def("soliton_residual", &soliton_residual);

  m.def("reference",
        [](const std::string& shape, double parameter, double span, std::size_t n) {
          static const std::pair<const char*, ReferenceShape> kShapes[] = {
              {"grim_reaper", ReferenceShape::GrimReaper}, {"catenary", ReferenceShape::Catenary},
              {"cycloid", ReferenceShape::Cycloid},        {"parabola", ReferenceShape::Parabola},
              {"circle", ReferenceShape::Circle},          {"line", ReferenceShape::Line},
              {"elastica", ReferenceShape::Elastica}};
          for (const auto& [name, value] : kShapes)
            if (shape == name) return make_reference({value, parameter, span}, n).curve;
          throw DomainError("unknown reference shape '" + shape + "'");
        },
        py::arg("shape"), py::arg("parameter") = 1.0, py::arg("span") = 1.0, py::arg("samples") = 2001);

  m.def("first_variation",
        [](const PlaneCurve& c, const CurvatureEnergy& e, double center, double radius, double amplitude,
           double eps) { return first_variation(c, e, BumpPerturbation{center, radius, amplitude}, eps); },
        py::arg("curve"), py::arg("energy"), py::arg("center"), py::arg("radius"), py::arg("amplitude"),
        py::arg("epsilon") = 1e-4);

  // JSON-producing commands return serialized text; the package wrapper parses it.
  m.def("_soliton_json", [](bool log, double p, double b, double d, double half_span, double tol) {
    SolitonRequest req{log ? FlowMode::Log : FlowMode::Power, p, b, d, half_span, tol};
    return soliton_metadata(req, run_soliton(req)).dump();
  });
  m.def("_verify_json", [](const PlaneCurve& c, bool log, double p, double b) {
    return verify_json(verify_curve(c, log ? FlowMode::Log : FlowMode::Power, p, b)).dump();
  });
}
