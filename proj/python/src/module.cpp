// Python bindings. Small results are exposed as classes; the larger reports
// cross the boundary as dicts built from their JSON form.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "hypzero/errors.hpp"
#include "hypzero/flows.hpp"
#include "hypzero/hyperpoly.hpp"
#include "hypzero/kernel.hpp"
#include "hypzero/levelcurve.hpp"
#include "hypzero/quadrature.hpp"
#include "hypzero/roots.hpp"
#include "hypzero/saddle.hpp"
#include "hypzero/verify.hpp"

namespace py = pybind11;
using namespace hypzero;

namespace {

Alpha to_alpha(cplx a) { return Alpha(a.real(), a.imag()); }

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

template <typename T>
py::object as_dict(const T& value) {
  nlohmann::json j;
  to_json(j, value);
  return to_py(j);
}

ExperimentConfig make_config(const py::dict& settings) {
  ExperimentConfig c;
  for (const auto& [key, value] : settings) {
    const auto k = py::str(key).cast<std::string>();
    std::string v;
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) {
        v += (v.empty() ? "" : ",") + py::str(item).cast<std::string>();
      }
    } else {
      v = py::str(value).cast<std::string>();
    }
    apply_setting(c, k, v);
  }
  c.validate();
  return c;
}

py::dict contour_dict(const ContourIntegral& c) {
  py::dict d;
  d["log_modulus"] = c.log_modulus;
  d["phase"] = c.phase;
  d["log_abs_error"] = c.log_abs_error;
  d["contour_id"] = c.contour_id;
  return d;
}

py::dict i1_dict(const I1Result& r) {
  py::dict d;
  d["integral"] = contour_dict(r.integral);
  d["log_truncation_bound"] = r.log_truncation_bound;
  d["direction_to_pole"] = r.direction_to_pole;
  d["branch_shift"] = r.branch_shift;
  d["to_zero"] = as_dict(r.to_zero);
  d["to_pole"] = as_dict(r.to_pole);
  return d;
}

py::dict i2_dict(const I2Result& r) {
  py::dict d;
  d["integral"] = contour_dict(r.integral);
  d["K"] = r.K;
  d["K_abs_error"] = r.K_abs_error;
  d["junction_arg_t"] = r.junction_arg_t;
  d["path"] = r.path;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hypzero, m) {
  m.doc() = "Zeros of hypergeometric polynomials and their limiting curves";
  m.attr("SCHEMA") = kSchema;

  auto base = py::register_exception<Error>(m, "HypzeroError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<SingularPointError>(m, "SingularPointError", base);
  py::register_exception<RegionError>(m, "RegionError", base);
  py::register_exception<TracingError>(m, "TracingError", base);
  py::register_exception<IndeterminateError>(m, "IndeterminateError", base);
  py::register_exception<AccuracyError>(m, "AccuracyError", base);
  py::register_exception<ContinuationError>(m, "ContinuationError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  m.def("auto_bits", &auto_bits, py::arg("degree"));
  m.def(
      "phi",
      [](cplx t, cplx z, cplx alpha) { return phi(t, z, to_alpha(alpha)).value; },
      py::arg("t"), py::arg("z"), py::arg("alpha"),
      "alpha log t + log(1 - z t) on the principal branch.");
  m.def(
      "phi_prime", [](cplx t, cplx z, cplx alpha) { return phi_prime(t, z, to_alpha(alpha)); },
      py::arg("t"), py::arg("z"), py::arg("alpha"));

  py::class_<Polynomial>(m, "Polynomial")
      .def_readonly("degree", &Polynomial::degree)
      .def_readonly("shift", &Polynomial::shift)
      .def_readonly("coeffs", &Polynomial::coeffs, "balanced coefficients, max modulus 1")
      .def_readonly("scale", &Polynomial::scale, "log of the common factor")
      .def_property_readonly("alpha", [](const Polynomial& p) { return p.alpha.value(); })
      .def("coefficient", &Polynomial::coefficient, py::arg("k"))
      .def("to_dict", [](const Polynomial& p) { return as_dict(p); })
      .def("__repr__", [](const Polynomial& p) {
        return "<Polynomial degree=" + std::to_string(p.degree) + ">";
      });
  m.def(
      "coefficients",
      [](int n, cplx alpha, double shift) { return coefficients(n, to_alpha(alpha), shift); },
      py::arg("n"), py::arg("alpha"), py::arg("shift") = 0.0);

  py::class_<Evaluation>(m, "Evaluation")
      .def_readonly("value", &Evaluation::value)
      .def_readonly("magnitude_sum", &Evaluation::magnitude_sum)
      .def_readonly("scaled_residual", &Evaluation::scaled_residual)
      .def_readonly("rel_error_bound", &Evaluation::rel_error_bound);
  m.def(
      "evaluate",
      [](const Polynomial& p, cplx z, const std::string& precision) {
        return evaluate(p, z, Precision::parse(precision));
      },
      py::arg("p"), py::arg("z"), py::arg("precision") = "double");

  py::class_<ZeroSet>(m, "ZeroSet")
      .def_readonly("n", &ZeroSet::n)
      .def_readonly("zeros", &ZeroSet::zeros)
      .def_readonly("residuals", &ZeroSet::residuals)
      .def_readonly("converged", &ZeroSet::converged)
      .def_readonly("escalated", &ZeroSet::escalated)
      .def_readonly("bits_used", &ZeroSet::bits_used)
      .def_readonly("iterations", &ZeroSet::iterations)
      .def("max_residual", &ZeroSet::max_residual)
      .def("to_dict", [](const ZeroSet& z) { return as_dict(z); })
      .def("to_csv", [](const ZeroSet& z) { return to_csv(z); });
  m.def(
      "find_roots",
      [](const Polynomial& p, const std::string& precision, double residual_tol) {
        RootOptions opt;
        opt.residual_tol = residual_tol;
        py::gil_scoped_release release;
        return find_roots(p, Precision::parse(precision), opt);
      },
      py::arg("p"), py::arg("precision") = "auto", py::arg("residual_tol") = 1e-10);

  m.def(
      "saddle_point",
      [](cplx z, cplx alpha) {
        const SaddleData s = saddle_point(z, to_alpha(alpha));
        py::dict d;
        d["t0"] = s.t0;
        d["phi_pp_mod"] = s.phi_pp_mod;
        d["phi_pp_arg"] = s.phi_pp_arg;
        d["log_g_at_t0"] = s.log_g_at_t0.continued();
        return d;
      },
      py::arg("z"), py::arg("alpha"));
  m.def(
      "level_constant", [](cplx alpha) { return level_constant(to_alpha(alpha)); },
      py::arg("alpha"));
  m.def(
      "crossing_point", [](cplx alpha) { return crossing_point(to_alpha(alpha)); },
      py::arg("alpha"));
  m.def(
      "I1_asymptotic",
      [](int n, cplx z, cplx alpha, bool check_region) {
        const I1Asymptotic a = I1_asymptotic(n, z, to_alpha(alpha), std::nullopt, check_region);
        py::dict d;
        d["log_modulus"] = a.log_modulus;
        d["phase"] = a.phase;
        d["estimate"] = a.estimate;
        d["direction"] = a.direction;
        return d;
      },
      py::arg("n"), py::arg("z"), py::arg("alpha"), py::arg("check_region") = true);

  m.def(
      "classify_region",
      [](cplx z, cplx alpha, double boundary_tol) {
        ClassifyOptions opt;
        opt.boundary_tol = boundary_tol;
        const RegionLabel r = classify_region(z, to_alpha(alpha), opt);
        return py::make_tuple(to_string(r.label), r.margin);
      },
      py::arg("z"), py::arg("alpha"), py::arg("boundary_tol") = 1e-6,
      "Returns (label, margin) with label one of in_E, not_in_E, boundary.");
  m.def(
      "halfplane_zero_free_check",
      [](cplx z, cplx alpha) {
        const CubicCertificate c = halfplane_zero_free_check(z, to_alpha(alpha));
        py::dict d;
        d["certified"] = c.certified;
        d["coefficients"] = c.coefficients;
        d["min_value"] = c.min_value;
        d["argmin"] = c.argmin;
        return d;
      },
      py::arg("z"), py::arg("alpha"));
  m.def(
      "separatrices",
      [](cplx alpha) {
        py::list out;
        for (const PathTrace& p : separatrices(to_alpha(alpha))) out.append(as_dict(p));
        return out;
      },
      py::arg("alpha"));

  m.def(
      "euler_integral",
      [](int n, cplx alpha, cplx z, double rel_tol, double shift) {
        QuadOptions q;
        q.rel_tol = rel_tol;
        const ContourIntegral c = euler_integral(n, to_alpha(alpha), z, q, shift);
        py::dict d = contour_dict(c);
        d["value"] = c.value();
        return d;
      },
      py::arg("n"), py::arg("alpha"), py::arg("z"), py::arg("rel_tol") = 1e-12,
      py::arg("shift") = 0.0);
  m.def(
      "integrate_I1",
      [](int n, cplx alpha, cplx z, double eps, double rel_tol) {
        I1Options opt;
        opt.quad.rel_tol = rel_tol;
        return i1_dict(integrate_I1(n, to_alpha(alpha), z, eps, opt));
      },
      py::arg("n"), py::arg("alpha"), py::arg("z"), py::arg("eps") = 1e-8,
      py::arg("rel_tol") = 1e-12);
  m.def(
      "integrate_I2",
      [](int n, cplx alpha, cplx z, double rel_tol) {
        I2Options opt;
        opt.quad.rel_tol = rel_tol;
        return i2_dict(integrate_I2(n, to_alpha(alpha), z, opt));
      },
      py::arg("n"), py::arg("alpha"), py::arg("z"), py::arg("rel_tol") = 1e-12);
  m.def(
      "contour_split",
      [](int n, cplx alpha, cplx z, double eps, double rel_tol) {
        QuadOptions q;
        q.rel_tol = rel_tol;
        const ContourSplit s = contour_split(n, to_alpha(alpha), z, eps, q);
        py::dict d;
        d["euler"] = contour_dict(s.euler);
        d["I1"] = i1_dict(s.I1);
        d["I2"] = i2_dict(s.I2);
        d["log_discrepancy"] = s.log_discrepancy;
        d["log_budget"] = s.log_budget;
        d["consistent"] = s.consistent();
        return d;
      },
      py::arg("n"), py::arg("alpha"), py::arg("z"), py::arg("eps") = 1e-8,
      py::arg("rel_tol") = 1e-10);
  m.def(
      "f_lemma_check",
      [](const std::function<cplx(double)>& f, const std::vector<int>& n_list) {
        return f_lemma_check(f, n_list);
      },
      py::arg("f"), py::arg("n_list"));

  py::class_<LevelCurve>(m, "LevelCurve")
      .def_readonly("constant", &LevelCurve::constant)
      .def_readonly("crossing_point", &LevelCurve::crossing_point)
      .def_readonly("resolution", &LevelCurve::resolution)
      .def_property_readonly("alpha", [](const LevelCurve& c) { return c.alpha.value(); })
      .def_property_readonly("arcs",
                             [](const LevelCurve& c) -> py::object { return as_dict(c)["arcs"]; })
      .def(
          "distance",
          [](const LevelCurve& c, const std::vector<cplx>& points, bool restrict_to_E) {
            const DistanceSummary d = distance_to_curve(points, c, restrict_to_E);
            return py::make_tuple(d.distances, d.max, d.mean);
          },
          py::arg("points"), py::arg("restrict_to_E") = true,
          "Returns (distances, max, mean) to the selected arcs.")
      .def("to_dict", [](const LevelCurve& c) { return as_dict(c); });
  m.def(
      "trace_level_curve",
      [](cplx alpha, double resolution) {
        py::gil_scoped_release release;
        return trace_level_curve(to_alpha(alpha), resolution);
      },
      py::arg("alpha"), py::arg("resolution") = 0.0);

  // Experiment runs take the same keys as a config file.
  m.def(
      "run_check",
      [](const py::dict& settings) {
        const ExperimentConfig c = make_config(settings);
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_theorem_check(c);
        }
        return as_dict(r);
      },
      py::arg("settings") = py::dict());
  m.def(
      "run_realcase",
      [](double k, double l, const py::dict& settings) {
        const ExperimentConfig c = make_config(settings);
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_realcase_crosscheck(k, l, c);
        }
        return as_dict(r);
      },
      py::arg("k"), py::arg("l") = 0.0, py::arg("settings") = py::dict());
  m.def(
      "run_region_map",
      [](const py::dict& settings) {
        const ExperimentConfig c = make_config(settings);
        RegionMap r;
        {
          py::gil_scoped_release release;
          r = run_region_map(c);
        }
        return as_dict(r);
      },
      py::arg("settings"));
  m.def(
      "run_asym_table",
      [](const py::dict& settings) {
        const ExperimentConfig c = make_config(settings);
        AsymTable t;
        {
          py::gil_scoped_release release;
          t = run_asym_table(c);
        }
        return as_dict(t);
      },
      py::arg("settings") = py::dict());
}
