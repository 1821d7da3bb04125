#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tps/analysis.hpp"
#include "tps/chart.hpp"
#include "tps/contact.hpp"
#include "tps/exprlang.hpp"
#include "tps/gauge.hpp"
#include "tps/sampling.hpp"
#include "tps/structure.hpp"
#include "tps/thermo.hpp"

namespace tps {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "tps-report/1";
constexpr double kFdTol = 1e-6;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json vector_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i)));
  return rows;
}

/// Accumulates named checks; a check passes when value ≤ tol.
struct CheckList {
  ordered_json checks = ordered_json::array();
  ordered_json residuals = ordered_json::object();
  bool all_pass = true;

  void add(const std::string& name, double value, double tol) {
    bool ok = value <= tol;
    checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", ok}});
    residuals[name] = value;
    all_pass = all_pass && ok;
  }

  void note(const std::string& name, double value) { residuals[name] = value; }
};

ordered_json report_head(const std::string& command, ordered_json config) {
  ordered_json r;
  r["schema"] = kSchema;
  r["command"] = command;
  r["config"] = std::move(config);
  return r;
}

void emit(const ordered_json& report, std::string& out) { out += report.dump(2) + "\n"; }

int usage_error(const std::string& message, std::string& err) {
  err += "error: " + message + "\n";
  return 2;
}

int runtime_error_report(const std::string& command, const ordered_json& config,
                         const std::string& type, const std::string& message,
                         std::string& out, const std::vector<double>* point = nullptr) {
  ordered_json r = report_head(command, config);
  ordered_json e;
  e["type"] = type;
  e["message"] = message;
  if (point) {
    ordered_json p = ordered_json::array();
    for (double c : *point) p.push_back(c);
    e["point"] = p;
  }
  r["error"] = e;
  r["pass"] = false;
  emit(r, out);
  return 1;
}

double parse_number(const std::string& text, const std::string& what) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(what + " has a malformed number '" + text + "'");
  }
  if (used != text.size()) throw Error(what + " has a malformed number '" + text + "'");
  return v;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> split_assignments(const std::string& text,
                                                                   const std::string& what) {
  std::vector<std::pair<std::string, std::string>> items;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t eq = part.find('=');
    if (eq == std::string::npos) throw Error(what + " entry '" + part + "' is not name=value");
    items.emplace_back(trimmed(part.substr(0, eq)), trimmed(part.substr(eq + 1)));
  }
  if (items.empty()) throw Error(what + " is empty");
  return items;
}

/// "--at w=0,p1=-2,q1=1": every chart coordinate exactly once.
Vector parse_point(const std::string& text, const std::vector<std::string>& names) {
  auto items = split_assignments(text, "--at");
  Vector x(static_cast<Eigen::Index>(names.size()));
  std::vector<bool> seen(names.size(), false);
  for (const auto& [name, value] : items) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error("--at has an unknown coordinate '" + name + "'");
    size_t idx = static_cast<size_t>(it - names.begin());
    if (seen[idx]) throw Error("--at repeats coordinate '" + name + "'");
    seen[idx] = true;
    x[static_cast<Eigen::Index>(idx)] = parse_number(value, "--at");
  }
  for (size_t i = 0; i < names.size(); ++i) {
    if (!seen[i]) throw Error("--at is missing coordinate '" + names[i] + "'");
  }
  return x;
}

/// "s=0:1:5" (inclusive endpoints, count values) or "s=0.5" (single value).
std::vector<double> parse_range(const std::string& text) {
  size_t c1 = text.find(':');
  if (c1 == std::string::npos) return {parse_number(text, "--grid")};
  size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error("--grid range '" + text + "' needs lo:hi:count");
  double lo = parse_number(text.substr(0, c1), "--grid");
  double hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "--grid");
  double cnt = parse_number(text.substr(c2 + 1), "--grid");
  if (cnt != std::floor(cnt) || cnt < 1) throw Error("--grid count must be a positive integer");
  int n = static_cast<int>(cnt);
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(n));
  if (n == 1) {
    vals.push_back(lo);
  } else {
    for (int i = 0; i < n; ++i) vals.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return vals;
}

/// Grid axes in the model's canonical variable order; rows iterate row-major
/// with the first variable outermost, so the point index is reproducible.
std::vector<std::vector<double>> parse_grid(const std::string& text,
                                            const std::vector<std::string>& variables) {
  auto items = split_assignments(text, "--grid");
  std::vector<std::vector<double>> axes(variables.size());
  std::vector<bool> seen(variables.size(), false);
  for (const auto& [name, value] : items) {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) throw Error("--grid has an unknown variable '" + name + "'");
    size_t idx = static_cast<size_t>(it - variables.begin());
    if (seen[idx]) throw Error("--grid repeats variable '" + name + "'");
    seen[idx] = true;
    axes[idx] = parse_range(value);
  }
  for (size_t i = 0; i < variables.size(); ++i) {
    if (!seen[i]) throw Error("--grid is missing variable '" + variables[i] + "'");
  }
  return axes;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  int n = 1;
  int points = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

int cmd_verify(const VerifyConfig& cfg, std::string& out, std::string& err) {
  if (cfg.n < 1) return usage_error("n must be ≥ 1", err);
  if (cfg.points < 1) return usage_error("points must be ≥ 1", err);
  if (!(cfg.tol > 0)) return usage_error("tol must be positive", err);

  int n = cfg.n;
  int dim = 2 * n + 1;
  Sampler sampler(cfg.seed);
  CheckList cl;

  // chart checks run against one fixed smooth field
  ScalarField f = ScalarField::from([n](auto x) {
    using T = std::decay_t<decltype(x[0])>;
    T acc = x[0] * x[0];
    for (int a = 0; a < n; ++a) acc += x[1 + a] * x[1 + n + a];
    return acc + exp(T(0.5) * x[1 + n]);
  });

  std::vector<VectorField> Pf, Qf;
  for (int a = 0; a < n; ++a) {
    Pf.push_back(VectorField::horizontal_P(n, a));
    Qf.push_back(VectorField::horizontal_Q(n, a));
  }

  double adapted_rt = 0, grad_fd = 0, pair_fd = 0;
  double eta_xi = 0, eta_hor = 0, deta_xi = 0, bracket = 0, nondeg = 0;
  double compat = 0, ginv = 0, phi2 = 0;
  long signature_mismatches = 0;
  double expected_det = std::pow(0.25, n);

  for (int k = 0; k < cfg.points; ++k) {
    DarbouxPoint at = sampler.darboux_point(n);
    TangentVector X = TangentVector::make(n, sampler.components(dim));
    TangentVector Y = TangentVector::make(n, sampler.components(dim));

    AdaptedVector A = to_adapted(X, at);
    adapted_rt = std::max(adapted_rt, (from_adapted(A, at).comp - X.comp).cwiseAbs().maxCoeff());

    CotangentVector df = differentiate(f, at);
    grad_fd = std::max(grad_fd, (df.comp - f.gradient_fd(at.x)).cwiseAbs().maxCoeff());
    pair_fd = std::max(pair_fd, std::abs(pairing(df, X) - f.directional_fd(at.x, X.comp)));

    eta_xi = std::max(eta_xi, std::abs(eta(at, reeb(n)) - 1.0));
    for (const auto& U : horizontal_basis(at)) {
      eta_hor = std::max(eta_hor, std::abs(eta(at, U)));
    }
    for (int i = 0; i < dim; ++i) {
      TangentVector ei = TangentVector::make(n, Vector::Unit(dim, i));
      deta_xi = std::max(deta_xi, std::abs(d_eta(at, reeb(n), ei)));
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Vector br = lie_bracket(Pf[static_cast<size_t>(a)], Qf[static_cast<size_t>(b)], at).comp;
        Vector expect = (a == b) ? Vector(-reeb(n).comp) : Vector(Vector::Zero(dim));
        bracket = std::max(bracket, (br - expect).cwiseAbs().maxCoeff());
      }
    }
    nondeg = std::max(nondeg, std::abs(contact_nondegeneracy(at) - expected_det));

    compat = std::max(compat, compatibility_check(at, X, Y));
    Matrix G = metric_G(at);
    ginv = std::max(ginv,
                    (G * inverse_metric_matrix(at) - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
    Matrix P = phi_matrix(at);
    Matrix expected_p2 =
        Matrix::Identity(dim, dim) - reeb(n).comp * eta_covector(at).comp.transpose();
    phi2 = std::max(phi2, (P * P - expected_p2).cwiseAbs().maxCoeff());

    Signature sig = signature_of(G);
    if (sig.positive != n + 1 || sig.negative != n || sig.zero != 0) ++signature_mismatches;
  }

  cl.add("adapted_round_trip_max_residual", adapted_rt, cfg.tol);
  cl.add("gradient_fd_max_residual", grad_fd, kFdTol);
  cl.add("pairing_fd_max_residual", pair_fd, kFdTol);
  cl.add("eta_of_reeb_max_residual", eta_xi, cfg.tol);
  cl.add("eta_horizontal_max_residual", eta_hor, cfg.tol);
  cl.add("d_eta_reeb_max_residual", deta_xi, cfg.tol);
  cl.add("horizontal_bracket_max_residual", bracket, cfg.tol);
  cl.add("nondegeneracy_max_residual", nondeg, cfg.tol);
  cl.add("metric_compatibility_max_residual", compat, cfg.tol);
  cl.add("metric_inverse_max_residual", ginv, cfg.tol);
  cl.add("phi_squared_max_residual", phi2, cfg.tol);
  cl.add("signature_mismatch_count", static_cast<double>(signature_mismatches), cfg.tol);

  std::vector<std::pair<std::string, std::string>> gauges = {
      {"identity", "1"}, {"inv_p1", "1/p1"}, {"exp_q1", "exp(q1)"}};
  if (n >= 2) gauges.emplace_back("exp_half_p1_plus_q2", "exp(0.5*p1+q2)");
  for (const auto& [label, source] : gauges) {
    GaugeFactor omega = GaugeFactor::from_expression(source, n);
    std::map<std::string, double> worst;
    for (int k = 0; k < cfg.points; ++k) {
      DarbouxPoint at = sampler.darboux_point(n);
      for (const auto& [key, value] : verify_gauge(at, omega)) {
        auto it = worst.find(key);
        if (it == worst.end() || value > it->second) worst[key] = value;
      }
    }
    double suite_max = 0;
    for (const auto& [key, value] : worst) {
      cl.note("gauge_" + label + "_" + key, value);
      suite_max = std::max(suite_max, value);
    }
    cl.add("gauge_" + label + "_max_residual", suite_max, cfg.tol);
  }

  ordered_json config{{"n", cfg.n}, {"points", cfg.points}, {"seed", cfg.seed}, {"tol", cfg.tol}};
  ordered_json r = report_head("verify", config);
  r["checks"] = cl.checks;
  r["residuals"] = cl.residuals;
  r["pass"] = cl.all_pass;
  emit(r, out);
  return cl.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gauge

struct GaugeConfig {
  int n = 1;
  bool n_given = false;
  std::string omega;
  std::string at;
  std::string rep;
  double tol = 1e-9;
};

int cmd_gauge(GaugeConfig cfg, std::string& out, std::string& err) {
  if (!cfg.rep.empty() && cfg.rep != "energy" && cfg.rep != "entropy") {
    return usage_error("rep must be energy or entropy", err);
  }
  if (!cfg.rep.empty()) {
    if (cfg.n_given && cfg.n != 2) return usage_error("--rep requires --n 2", err);
    cfg.n = 2;
  }
  if (cfg.n < 1) return usage_error("n must be ≥ 1", err);
  if (!(cfg.tol > 0)) return usage_error("tol must be positive", err);

  ordered_json config{{"n", cfg.n}, {"omega", cfg.omega}, {"at", cfg.at}, {"tol", cfg.tol}};
  if (!cfg.rep.empty()) config["rep"] = cfg.rep;

  DarbouxPoint at{};
  GaugeFactor omega;
  std::string omega_darboux;
  try {
    if (cfg.rep.empty()) {
      DarbouxChart chart{cfg.n};
      at = DarbouxPoint::make(cfg.n, parse_point(cfg.at, chart.coordinate_names()));
      expr::Ast ast = expr::parse_darboux(cfg.omega, cfg.n);
      omega_darboux = expr::to_string(ast);
      omega = GaugeFactor::from_expression(cfg.omega, cfg.n);
    } else {
      Vector phys = parse_point(cfg.at, {"u", "s", "v", "T", "p"});
      PhysicalState state{phys[0], phys[1], phys[2], phys[3], phys[4]};
      Representation rep =
          cfg.rep == "energy" ? Representation::energy() : Representation::entropy();
      at = rep.to_darboux(state);
      expr::Ast ast = expr::parse_with_representation(cfg.omega, cfg.n, cfg.rep);
      omega_darboux = expr::to_string(ast);
      omega = GaugeFactor::from_field(expr::to_field(ast));
    }
  } catch (const expr::ParseError& e) {
    return usage_error(std::string("--omega does not parse: ") + e.what(), err);
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }

  try {
    GaugedStructure g = gauge_transform(at, omega);
    Matrix closed = closed_form_gprime(at, omega);
    auto residuals = verify_gauge(at, omega);

    CheckList cl;
    for (const auto& [key, value] : residuals) cl.add(key, value, cfg.tol);

    ordered_json r = report_head("gauge", config);
    r["omega_darboux"] = omega_darboux;
    r["point"] = vector_json(at.x);
    r["omega_value"] = g.omega;
    r["d_omega"] = vector_json(g.d_omega);
    r["zeta"] = vector_json(g.zeta.comp);
    r["xi_prime"] = vector_json(g.xi_prime.comp);
    r["eta_prime"] = vector_json(g.eta_prime);
    r["phi_prime"] = matrix_json(g.phi_prime);
    r["d_eta_prime"] = matrix_json(g.d_eta_prime);
    r["g_prime"] = matrix_json(g.g_prime);
    r["g_prime_closed_form"] = matrix_json(closed);
    r["checks"] = cl.checks;
    r["residuals"] = cl.residuals;
    r["pass"] = cl.all_pass;
    emit(r, out);
    return cl.all_pass ? 0 : 1;
  } catch (const GaugeSingularity& e) {
    return runtime_error_report("gauge", config, "gauge_singularity", e.what(), out, &e.point);
  } catch (const expr::EvalError& e) {
    return runtime_error_report("gauge", config, "evaluation_error", e.what(), out);
  } catch (const DomainError& e) {
    return runtime_error_report("gauge", config, "domain_error", e.what(), out);
  }
}

// ---------------------------------------------------------------------------
// pullback / curvature / length

struct GridConfig {
  std::string model;
  std::string rep = "energy";
  std::string grid;
  std::string output = "json";
  bool scan = false;
  double eps = 1e-3;
  int samples = 50;
};

struct GridData {
  std::vector<std::string> variables;
  std::vector<Vector> points;  // in-domain points, canonical variable order
  std::vector<long> indices;   // original row-major grid index per point
  long skipped = 0;
};

GridData evaluate_grid(const ParsedModel& model, const std::string& rep,
                       const std::string& grid_text) {
  GridData data;
  data.variables = model.grid_variables(rep);
  auto axes = parse_grid(grid_text, data.variables);
  const FundamentalRelation& rel = model.relation(rep);

  std::vector<size_t> cursor(axes.size(), 0);
  long index = 0;
  while (true) {
    Vector q(static_cast<Eigen::Index>(axes.size()));
    for (size_t i = 0; i < axes.size(); ++i) q[static_cast<Eigen::Index>(i)] = axes[i][cursor[i]];
    if (rel.in_domain(q)) {
      data.points.push_back(q);
      data.indices.push_back(index);
    } else {
      ++data.skipped;
    }
    ++index;
    // advance row-major: last variable fastest
    size_t level = axes.size();
    while (level > 0) {
      --level;
      if (++cursor[level] < axes[level].size()) break;
      cursor[level] = 0;
      if (level == 0) return data;
    }
  }
}

void warn_skipped(long skipped, std::string& err) {
  if (skipped > 0) {
    err += "warning: skipped " + std::to_string(skipped) +
           " grid point(s) outside the model domain\n";
  }
}

int cmd_pullback(const GridConfig& cfg, std::string& out, std::string& err) {
  if (cfg.output != "json" && cfg.output != "csv") {
    return usage_error("output must be json or csv", err);
  }
  ParsedModel model;
  GridData grid;
  try {
    model = parse_model(cfg.model);
    grid = evaluate_grid(model, cfg.rep, cfg.grid);
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }
  warn_skipped(grid.skipped, err);

  ordered_json config{
      {"model", ordered_json::parse(cfg.model)}, {"rep", cfg.rep}, {"grid", cfg.grid},
      {"output", cfg.output}};
  if (grid.points.empty()) {
    return runtime_error_report("pullback", config, "empty_result",
                                "all grid points are outside the model domain", out);
  }

  const FundamentalRelation& rel = model.relation(cfg.rep);
  int m = rel.arity();
  if (cfg.output == "csv") {
    std::string header;
    for (const auto& v : grid.variables) header += v + ",";
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j)
        header += "g" + std::to_string(i) + std::to_string(j) + (i == m && j == m ? "" : ",");
    out += header + "\n";
    for (const auto& q : grid.points) {
      Matrix g = pullback_metric(rel, q);
      std::string line;
      for (Eigen::Index i = 0; i < q.size(); ++i) line += fmt17(q[i]) + ",";
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          line += fmt17(g(i, j)) + (i == m - 1 && j == m - 1 ? "" : ",");
      out += line + "\n";
    }
    return 0;
  }

  ordered_json r = report_head("pullback", config);
  r["variables"] = grid.variables;
  ordered_json rows = ordered_json::array();
  for (size_t k = 0; k < grid.points.size(); ++k) {
    const Vector& q = grid.points[k];
    ordered_json point;
    for (size_t i = 0; i < grid.variables.size(); ++i) {
      point[grid.variables[i]] = q[static_cast<Eigen::Index>(i)];
    }
    rows.push_back({{"index", grid.indices[k]},
                    {"point", point},
                    {"metric", matrix_json(pullback_metric(rel, q))}});
  }
  r["rows"] = rows;
  r["skipped"] = grid.skipped;
  emit(r, out);
  return 0;
}

int cmd_curvature(const GridConfig& cfg, std::string& out, std::string& err) {
  if (cfg.output != "json" && cfg.output != "csv") {
    return usage_error("output must be json or csv", err);
  }
  if (cfg.scan && !cfg.grid.empty()) {
    return usage_error("curvature needs exactly one of --grid or --scan", err);
  }
  if (!cfg.scan && cfg.grid.empty()) {
    return usage_error("curvature needs exactly one of --grid or --scan", err);
  }

  ParsedModel model;
  try {
    model = parse_model(cfg.model);
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }

  if (cfg.scan) {
    if (!(cfg.eps > 0)) return usage_error("eps must be positive", err);
    if (cfg.samples < 2) return usage_error("samples must be ≥ 2", err);
    if (!model.vdw) return usage_error("--scan requires the vdw model", err);
    auto rows = curvature_scan(*model.vdw, cfg.eps, cfg.samples);
    if (cfg.output == "csv") {
      out += "T,R\n";
      for (const auto& row : rows) out += fmt17(row.T) + "," + fmt17(row.R) + "\n";
      return 0;
    }
    ordered_json config{{"model", ordered_json::parse(cfg.model)},
                        {"scan", true},
                        {"eps", cfg.eps},
                        {"samples", cfg.samples},
                        {"output", cfg.output}};
    ordered_json r = report_head("curvature", config);
    ordered_json jrows = ordered_json::array();
    for (size_t k = 0; k < rows.size(); ++k) {
      jrows.push_back({{"index", static_cast<long>(k)},
                       {"T", rows[k].T},
                       {"R", rows[k].R},
                       {"cond", rows[k].cond}});
    }
    r["rows"] = jrows;
    emit(r, out);
    return 0;
  }

  GridData grid;
  try {
    grid = evaluate_grid(model, cfg.rep, cfg.grid);
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }
  warn_skipped(grid.skipped, err);

  ordered_json config{{"model", ordered_json::parse(cfg.model)},
                      {"rep", cfg.rep},
                      {"grid", cfg.grid},
                      {"output", cfg.output}};
  if (grid.points.empty()) {
    return runtime_error_report("curvature", config, "empty_result",
                                "all grid points are outside the model domain", out);
  }

  MetricField g = MetricField::hessian_of(model.relation(cfg.rep));
  if (cfg.output == "csv") {
    std::string header;
    for (const auto& v : grid.variables) header += v + ",";
    out += header + "R\n";
    for (const auto& q : grid.points) {
      std::string line;
      for (Eigen::Index i = 0; i < q.size(); ++i) line += fmt17(q[i]) + ",";
      out += line + fmt17(scalar_curvature(g, q)) + "\n";
    }
    return 0;
  }

  ordered_json r = report_head("curvature", config);
  r["variables"] = grid.variables;
  ordered_json rows = ordered_json::array();
  for (size_t k = 0; k < grid.points.size(); ++k) {
    const Vector& q = grid.points[k];
    ordered_json point;
    for (size_t i = 0; i < grid.variables.size(); ++i) {
      point[grid.variables[i]] = q[static_cast<Eigen::Index>(i)];
    }
    rows.push_back({{"index", grid.indices[k]},
                    {"point", point},
                    {"R", scalar_curvature(g, q)},
                    {"cond", condition_number(g.components(q))}});
  }
  r["rows"] = rows;
  r["skipped"] = grid.skipped;
  emit(r, out);
  return 0;
}

struct LengthConfig {
  std::string curve;
  int steps = 200;
};

int cmd_length(const LengthConfig& cfg, std::string& out, std::string& err) {
  if (cfg.steps < 2) return usage_error("steps must be ≥ 2", err);
  ordered_json curve_cfg;
  int n = 0;
  std::vector<Vector> points;
  try {
    curve_cfg = ordered_json::parse(cfg.curve);
    if (!curve_cfg.is_object() || !curve_cfg.contains("n") || !curve_cfg.contains("points")) {
      throw Error("--curve must be a JSON object with \"n\" and \"points\"");
    }
    if (!curve_cfg["n"].is_number_integer()) throw Error("--curve key \"n\" must be an integer");
    n = curve_cfg["n"].get<int>();
    if (n < 1) throw Error("n must be ≥ 1");
    for (const auto& jp : curve_cfg["points"]) {
      if (!jp.is_array()) throw Error("--curve points must be arrays of coordinates");
      Vector x(static_cast<Eigen::Index>(jp.size()));
      for (size_t i = 0; i < jp.size(); ++i) {
        if (!jp[i].is_number()) throw Error("--curve points must be arrays of numbers");
        x[static_cast<Eigen::Index>(i)] = jp[i].get<double>();
      }
      points.push_back(x);
    }
  } catch (const nlohmann::json::exception& e) {
    return usage_error(std::string("--curve is not valid JSON: ") + e.what(), err);
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }

  try {
    ProcessCurve curve = polyline_curve(n, points);
    LengthResult result = process_length(curve, cfg.steps);
    ordered_json config{{"curve", curve_cfg}, {"steps", cfg.steps}};
    ordered_json r = report_head("length", config);
    r["length"] = result.length;
    r["sign_counts"] = {{"positive", result.positive},
                        {"negative", result.negative},
                        {"zero", result.zero}};
    r["sign_profile"] = result.profile;
    emit(r, out);
    return 0;
  } catch (const Error& e) {
    return usage_error(e.what(), err);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
  CLI::App app{"Contact-geometry toolkit for the thermodynamic phase space"};
  app.require_subcommand(1);
  app.footer(
      "Expression grammar (--omega): binary +, -, *, /, and right-associative ^;\n"
      "unary minus binds looser than ^, so -q1^2 means -(q1^2) and (-q1)^2 needs\n"
      "parentheses. Functions: exp, ln, sqrt. Variables: w, p1..pn, q1..qn\n"
      "(with gauge --rep also u, s, v, T, p). Numbers use C double syntax.");

  VerifyConfig vc;
  auto* verify = app.add_subcommand(
      "verify", "Run the identity suites at seeded-random points and report residuals");
  verify->add_option("--n", vc.n, "Degrees of freedom (chart dimension 2n+1)")
      ->capture_default_str();
  verify->add_option("--points", vc.points, "Sample count per suite")->capture_default_str();
  verify->add_option("--seed", vc.seed, "Sampler seed")->capture_default_str();
  verify->add_option("--tol", vc.tol, "Identity tolerance")->capture_default_str();

  GaugeConfig gc;
  auto* gauge = app.add_subcommand(
      "gauge", "Apply a conformal gauge factor at a point and report the primed structure");
  auto* gauge_n = gauge->add_option("--n", gc.n, "Degrees of freedom")->capture_default_str();
  gauge->add_option("--omega", gc.omega, "Conformal factor expression")->required();
  gauge->add_option("--at", gc.at, "Evaluation point, e.g. \"w=0,p1=-2,q1=1\"")->required();
  gauge->add_option("--rep", gc.rep,
                    "Physical alias set (energy|entropy); point is then \"u=..,s=..,v=..,T=..,p=..\"");
  gauge->add_option("--tol", gc.tol, "Check tolerance")->capture_default_str();

  GridConfig pc;
  auto* pullback = app.add_subcommand(
      "pullback", "Evaluate the Hessian metric of a model potential on a grid");
  pullback->add_option("--model", pc.model, "Model JSON, e.g. '{\"model\":\"ideal\"}'")->required();
  pullback->add_option("--rep", pc.rep, "Representation (energy|entropy)")->capture_default_str();
  pullback->add_option("--grid", pc.grid, "Grid, e.g. \"s=0:1:5,v=1:2:5\"")->required();
  pullback->add_option("--output", pc.output, "Output format (json|csv)")->capture_default_str();

  GridConfig cc;
  cc.rep = "entropy";
  cc.output = "csv";
  auto* curvature = app.add_subcommand(
      "curvature", "Scalar curvature of a model's Hessian metric on a grid or a critical scan");
  curvature->add_option("--model", cc.model, "Model JSON")->required();
  curvature->add_option("--rep", cc.rep, "Representation (energy|entropy)")->capture_default_str();
  curvature->add_option("--grid", cc.grid, "Grid, e.g. \"u=1:2:10,v=1:2:10\"");
  curvature->add_flag("--scan", cc.scan, "Critical-isochore scan (vdw model only)");
  curvature->add_option("--eps", cc.eps, "Scan endpoint offset: T stops at (1+eps)·T_c")
      ->capture_default_str();
  curvature->add_option("--samples", cc.samples, "Scan sample count")->capture_default_str();
  curvature->add_option("--output", cc.output, "Output format (json|csv)")->capture_default_str();

  LengthConfig lc;
  auto* length = app.add_subcommand("length", "Indefinite length of a polyline process curve");
  length->add_option("--curve", lc.curve, "Curve JSON: {\"n\":1,\"points\":[[w,p1,q1],...]}")
      ->required();
  length->add_option("--steps", lc.steps, "Midpoint-rule step count")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out += app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err += std::string("error: ") + e.what() + "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(vc, out, err);
    if (gauge->parsed()) {
      gc.n_given = gauge_n->count() > 0;
      return cmd_gauge(gc, out, err);
    }
    if (pullback->parsed()) return cmd_pullback(pc, out, err);
    if (curvature->parsed()) return cmd_curvature(cc, out, err);
    if (length->parsed()) return cmd_length(lc, out, err);
  } catch (const GaugeSingularity& e) {
    err += std::string("error: ") + e.what() + "\n";
    return 1;
  } catch (const DomainError& e) {
    err += std::string("error: ") + e.what() + "\n";
    return 1;
  } catch (const Error& e) {
    err += std::string("error: ") + e.what() + "\n";
    return 1;
  }
  err += "error: no subcommand selected\n";
  return 2;
}

}  // namespace tps
