#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "ultrakit/approxconv.hpp"
#include "ultrakit/fixtures.hpp"
#include "ultrakit/gsnorms.hpp"
#include "ultrakit/stft.hpp"
#include "ultrakit/suite.hpp"
#include "ultrakit/tmib.hpp"
#include "ultrakit/weightseq.hpp"

namespace py = pybind11;
using namespace ultrakit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of ultrakit";

  py::register_exception<DegreeOverflow>(m, "DegreeOverflow", PyExc_OverflowError);

  py::class_<WeightSequence>(m, "WeightSequence")
      .def_property_readonly("label", &WeightSequence::label)
      .def_property_readonly("order", &WeightSequence::order)
      .def_property_readonly("log_convex", &WeightSequence::log_convex)
      .def("log_value", &WeightSequence::log_value)
      .def("value", &WeightSequence::value);
  m.def("gevrey", &gevrey, py::arg("s"), py::arg("order"));
  m.def("associated_function", &associated_function, py::arg("M"), py::arg("t"));
  m.def("check_conditions", [](const WeightSequence& M) {
    auto c = check_conditions(M);
    auto pair = [](const ConstantPair& p) { return py::dict(py::arg("holds") = p.holds, py::arg("C0") = p.C0, py::arg("H") = p.H); };
    return py::dict(py::arg("order") = c.P, py::arg("m1") = c.m1, py::arg("m2prime") = pair(c.m2prime),
                    py::arg("m2") = pair(c.m2), py::arg("m3prime_partial_sum") = c.m3prime_partial_sum);
  });

  py::class_<GaussSum>(m, "GaussSum")
      .def(py::init<>())
      .def_static("gaussian", [](double a, cplx b, cplx c) { return GaussSum(ExpPoly::gaussian(a, b, c)); },
                  py::arg("a"), py::arg("b") = cplx(0.0), py::arg("c") = cplx(0.0))
      .def_static("parse", [](const std::string& text) { return parse_gauss_sum(text); })
      .def("format", [](const GaussSum& f) { return format_gauss_sum(f); })
      .def("__call__", [](const GaussSum& f, double x) { return f(x); })
      .def("__add__", [](const GaussSum& f, const GaussSum& g) { return f + g; })
      .def("__sub__", [](const GaussSum& f, const GaussSum& g) { return f - g; })
      .def("__len__", [](const GaussSum& f) { return f.terms().size(); })
      .def("is_zero", &GaussSum::is_zero);
  m.def("convolve", [](const GaussSum& f, const GaussSum& g) { return convolve(f, g); });
  m.def("fourier", [](const GaussSum& f) { return fourier(f); });
  m.def("derivative", [](const GaussSum& f, int order) { return derivative(f, order); });
  m.def("translate", [](const GaussSum& f, double x0) { return translate(f, x0); });
  m.def("modulate", [](const GaussSum& f, double xi) { return modulate(f, xi); });
  m.def("inner_l2", &inner_l2);
  m.def("standard_fixtures", [] {
    py::dict d;
    for (const auto& fx : standard_fixtures()) d[py::str(fx.name)] = fx.f;
    return d;
  });

  m.def(
      "gs_sup_norm",
      [](const GaussSum& f, const WeightSequence& M, const WeightSequence& A, double ell, double q, int alpha_max) {
        auto v = gs_sup_norm(f, NormParams{M, A, ell, q, alpha_max});
        return py::dict(py::arg("value") = v.value, py::arg("alpha") = v.alpha, py::arg("x") = v.x,
                        py::arg("certified") = v.certified);
      },
      py::arg("f"), py::arg("M"), py::arg("A"), py::arg("ell") = 1.0, py::arg("q") = 1.0, py::arg("alpha_max") = 16);

  m.def(
      "space_norm",
      [](const std::string& spec, const GaussSum& f) {
        auto v = space_norm(parse_space(spec), f);
        return py::dict(py::arg("value") = v.value, py::arg("certified") = v.certified);
      },
      py::arg("space"), py::arg("f"));
  m.def("translation_weight", [](const std::string& spec, double x) { return translation_weight(parse_space(spec), x); });

  m.def("window_from_gaussian", [](double a) { return build_window(ExpPoly::gaussian(a)).psi; }, py::arg("a"));
  m.def(
      "reconstruction_error",
      [](const GaussSum& f, double extent, double step, const std::vector<double>& probes) {
        auto w = build_window(ExpPoly::gaussian(std::numbers::pi));
        return reconstruct_check(f, w, Grid::make(extent, step), probes).error;
      },
      py::arg("f"), py::arg("extent") = 8.0, py::arg("step") = 0.02, py::arg("probes"));

  py::class_<RiemannScheme>(m, "RiemannScheme")
      .def(py::init([](double m_, int n, double gamma) {
             RiemannScheme s{m_, n, gamma};
             s.validate();
             return s;
           }),
           py::arg("m"), py::arg("n"), py::arg("gamma"))
      .def_readonly("m", &RiemannScheme::m)
      .def_readonly("n", &RiemannScheme::n)
      .def_readonly("gamma", &RiemannScheme::gamma)
      .def("nodes", &RiemannScheme::nodes)
      .def("gap_measure", &RiemannScheme::gap_measure);
  m.def("riemann_convolve", &riemann_convolve);
  m.def("default_schedule", &default_schedule, py::arg("steps") = 6);
  m.def(
      "convergence_study",
      [](const GaussSum& phi, const GaussSum& psi, const std::vector<RiemannScheme>& schedule, int alpha_max) {
        RiemannParams p;
        p.alpha_max = alpha_max;
        auto s = convergence_study(phi, psi, schedule, p);
        py::list rows;
        for (const auto& r : s.rows)
          rows.append(py::dict(py::arg("k") = r.k, py::arg("S1") = r.S1, py::arg("S2") = r.S2, py::arg("S3") = r.S3,
                               py::arg("total") = r.total, py::arg("bound_holds") = r.bound_holds));
        return py::dict(py::arg("rows") = rows, py::arg("reference_norm") = s.reference_norm,
                        py::arg("monotone") = s.monotone, py::arg("final_ok") = s.final_ok);
      },
      py::arg("phi"), py::arg("psi"), py::arg("schedule"), py::arg("alpha_max") = 8);

  m.def(
      "_run_criterion_json",
      [](int id, std::uint64_t seed) {
        Recorder rec;
        auto c = run_criterion(id, seed, rec);
        nlohmann::json j = to_json(c);
        j["violations"] = rec.violations;
        return j.dump();
      },
      py::arg("id"), py::arg("seed") = 7);
}
