// Python bindings for the core operations. Matrices cross the boundary as
// plain nested lists so the module has no numpy build dependency.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "tps/analysis.hpp"
#include "tps/contact.hpp"
#include "tps/exprlang.hpp"
#include "tps/gauge.hpp"
#include "tps/structure.hpp"
#include "tps/thermo.hpp"

namespace py = pybind11;
using namespace tps;

namespace {

std::vector<double> to_list(const Vector& v) {
  return {v.data(), v.data() + v.size()};
}

std::vector<std::vector<double>> to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row;
    row.reserve(static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector from_list(const std::vector<double>& x) {
  Vector v(static_cast<Eigen::Index>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

DarbouxPoint point_of(int n, const std::vector<double>& x) {
  return DarbouxPoint::make(n, from_list(x));
}

Representation rep_of(const std::string& name) {
  if (name == "energy") return Representation::energy();
  if (name == "entropy") return Representation::entropy();
  throw Error("unknown representation '" + name + "' (expected energy or entropy)");
}

}  // namespace

PYBIND11_MODULE(tpsgeom, m) {
  m.doc() = "Contact and metric structures on thermodynamic phase space";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const GaugeSingularity& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DimensionError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const expr::ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const expr::EvalError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "eta", [](int n, const std::vector<double>& x) { return to_list(eta_covector(point_of(n, x)).comp); },
      py::arg("n"), py::arg("x"), "Contact form components at a point");

  m.def(
      "metric", [](int n, const std::vector<double>& x) { return to_rows(metric_G(point_of(n, x))); },
      py::arg("n"), py::arg("x"), "Metric components at a point");

  m.def(
      "inverse_metric",
      [](int n, const std::vector<double>& x) { return to_rows(inverse_metric_matrix(point_of(n, x))); },
      py::arg("n"), py::arg("x"), "Inverse metric components at a point");

  m.def(
      "phi", [](int n, const std::vector<double>& x) { return to_rows(phi_matrix(point_of(n, x))); },
      py::arg("n"), py::arg("x"), "Endomorphism matrix at a point");

  m.def(
      "contact_nondegeneracy",
      [](int n, const std::vector<double>& x) { return contact_nondegeneracy(point_of(n, x)); },
      py::arg("n"), py::arg("x"),
      "Determinant of the restricted two-form on the horizontal frame");

  m.def(
      "eval_expression",
      [](const std::string& src, int n, const std::vector<double>& x) {
        ScalarField f = expr::to_field(expr::parse_darboux(src, n));
        Vector at = from_list(x);
        return py::make_tuple(f.value(at), to_list(f.gradient(at)));
      },
      py::arg("src"), py::arg("n"), py::arg("x"),
      "Evaluate a Darboux-variable expression: returns (value, gradient)");

  m.def(
      "gauge",
      [](const std::string& omega_src, int n, const std::vector<double>& x) {
        GaugeFactor omega = GaugeFactor::from_expression(omega_src, n);
        GaugedStructure g = gauge_transform(point_of(n, x), omega);
        py::dict out;
        out["omega"] = g.omega;
        out["d_omega"] = to_list(g.d_omega);
        out["eta_prime"] = to_list(g.eta_prime);
        out["zeta"] = to_list(g.zeta.comp);
        out["xi_prime"] = to_list(g.xi_prime.comp);
        out["phi_prime"] = to_rows(g.phi_prime);
        out["d_eta_prime"] = to_rows(g.d_eta_prime);
        out["g_prime"] = to_rows(g.g_prime);
        return out;
      },
      py::arg("omega"), py::arg("n"), py::arg("x"),
      "Apply a conformal gauge factor; returns the transformed structure blocks");

  m.def(
      "verify_gauge",
      [](const std::string& omega_src, int n, const std::vector<double>& x) {
        return verify_gauge(point_of(n, x), GaugeFactor::from_expression(omega_src, n));
      },
      py::arg("omega"), py::arg("n"), py::arg("x"),
      "Residuals of the gauge-transformation identities at a point");

  m.def(
      "mrugala",
      [](const std::string& rep, double u, double s, double v, double T, double p) {
        return to_rows(mrugala_metric(rep_of(rep), PhysicalState{u, s, v, T, p}));
      },
      py::arg("rep"), py::arg("u"), py::arg("s"), py::arg("v"), py::arg("T"), py::arg("p"),
      "Metric in physical coordinates for the energy or entropy representation");

  m.def(
      "representation_change",
      [](double u, double s, double v, double T, double p) {
        RepresentationChangeReport r = representation_change(PhysicalState{u, s, v, T, p});
        py::dict out;
        out["xi_prime_residual"] = r.xi_prime_residual;
        out["metric_residual"] = r.metric_residual;
        out["phi_residual"] = r.phi_residual;
        out["restriction_residual"] = r.restriction_residual;
        out["eta_scaling_residual"] = r.eta_scaling_residual;
        return out;
      },
      py::arg("u"), py::arg("s"), py::arg("v"), py::arg("T"), py::arg("p"),
      "Residuals of the energy-to-entropy change of representation");

  m.def(
      "pullback",
      [](const std::string& model_json, const std::string& rep, const std::vector<double>& q) {
        ParsedModel model = parse_model(model_json);
        return to_rows(pullback_metric(model.relation(rep), from_list(q)));
      },
      py::arg("model"), py::arg("rep"), py::arg("q"),
      "Pullback metric of a model's equilibrium embedding at a base point");

  m.def(
      "scalar_curvature",
      [](const std::string& model_json, const std::string& rep, const std::vector<double>& q) {
        ParsedModel model = parse_model(model_json);
        return scalar_curvature(MetricField::hessian_of(model.relation(rep)), from_list(q));
      },
      py::arg("model"), py::arg("rep"), py::arg("q"),
      "Scalar curvature of a model's hessian metric at a base point");

  m.def(
      "curvature_scan",
      [](double a, double b, double cv, double eps, int samples) {
        std::vector<py::tuple> rows;
        for (const ScanRow& row : curvature_scan(VdwParams{a, b, cv}, eps, samples)) {
          rows.push_back(py::make_tuple(row.T, row.R, row.cond));
        }
        return rows;
      },
      py::arg("a"), py::arg("b"), py::arg("cv"), py::arg("eps") = 1e-3, py::arg("samples") = 50,
      "Scalar curvature along the van der Waals critical isochore: rows of (T, R, cond)");

  m.def(
      "process_length",
      [](int n, const std::vector<std::vector<double>>& points, int steps) {
        std::vector<Vector> pts;
        pts.reserve(points.size());
        for (const auto& p : points) pts.push_back(from_list(p));
        LengthResult r = process_length(polyline_curve(n, pts), steps);
        py::dict out;
        out["length"] = r.length;
        out["positive"] = r.positive;
        out["negative"] = r.negative;
        out["zero"] = r.zero;
        out["profile"] = r.profile;
        return out;
      },
      py::arg("n"), py::arg("points"), py::arg("steps") = 200,
      "Metric length of a polyline process with a per-step sign profile");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::string out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out, err);
      },
      py::arg("args"), "Run a command-line request in process: returns (exit_code, stdout, stderr)");
}
