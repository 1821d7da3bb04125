#include "tps/thermo.hpp"

#include <cmath>

#include <json.hpp>

namespace tps {

namespace {

constexpr double kTemperatureFloor = 1e-12;

void require_temperature(double T) {
  if (std::abs(T) <= kTemperatureFloor) {
    throw DomainError("entropy chart is singular at T = 0");
  }
}

double relative_diff(double a, double b) {
  double diff = std::abs(a - b);
  if (diff == 0) return 0;
  return diff / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

Vector PhysicalState::as_vector() const {
  Vector x(5);
  x << u, s, v, T, p;
  return x;
}

DarbouxPoint Representation::to_darboux(const PhysicalState& at) const {
  Vector x(5);
  if (kind == Kind::energy) {
    x << at.u, -at.T, at.p, at.s, at.v;
  } else {
    require_temperature(at.T);
    x << at.s, -1.0 / at.T, -at.p / at.T, at.u, at.v;
  }
  return DarbouxPoint::make(2, x);
}

Matrix Representation::jacobian(const PhysicalState& at) const {
  // rows: (w, p1, p2, q1, q2); columns: (u, s, v, T, p)
  Matrix J = Matrix::Zero(5, 5);
  if (kind == Kind::energy) {
    J(0, 0) = 1;   // w = u
    J(1, 3) = -1;  // p1 = −T
    J(2, 4) = 1;   // p2 = p
    J(3, 1) = 1;   // q1 = s
    J(4, 2) = 1;   // q2 = v
  } else {
    require_temperature(at.T);
    double T2 = at.T * at.T;
    J(0, 1) = 1;              // w = s
    J(1, 3) = 1.0 / T2;       // p1 = −1/T
    J(2, 3) = at.p / T2;      // p2 = −p/T
    J(2, 4) = -1.0 / at.T;
    J(3, 0) = 1;              // q1 = u
    J(4, 2) = 1;              // q2 = v
  }
  return J;
}

Vector Representation::eta_physical(const PhysicalState& at) const {
  Vector e(5);
  if (kind == Kind::energy) {
    e << 1.0, -at.T, at.p, 0.0, 0.0;  // du − T ds + p dv
  } else {
    require_temperature(at.T);
    e << -1.0 / at.T, 1.0, -at.p / at.T, 0.0, 0.0;  // ds − (1/T)du − (p/T)dv
  }
  return e;
}

Matrix Representation::mrugala_direct(const PhysicalState& at) const {
  Vector e = eta_physical(at);
  Matrix G = e * e.transpose();
  auto add_sym = [&G](const Vector& alpha, const Vector& beta, double factor) {
    G += factor * 0.5 * (alpha * beta.transpose() + beta * alpha.transpose());
  };
  Vector du = Vector::Unit(5, 0), ds = Vector::Unit(5, 1), dv = Vector::Unit(5, 2);
  Vector dT = Vector::Unit(5, 3), dp = Vector::Unit(5, 4);
  if (kind == Kind::energy) {
    add_sym(ds, dT, 1.0);
    add_sym(dv, dp, -1.0);
  } else {
    double T2 = at.T * at.T;
    Vector d_invT = -(1.0 / T2) * dT;
    Vector d_poverT = (1.0 / at.T) * dp - (at.p / T2) * dT;
    add_sym(du, d_invT, 1.0);
    add_sym(dv, d_poverT, 1.0);
  }
  return G;
}

Matrix Representation::mrugala_pullback(const PhysicalState& at) const {
  Matrix J = jacobian(at);
  return J.transpose() * metric_G(to_darboux(at)) * J;
}

Matrix mrugala_metric(const Representation& rep, const PhysicalState& at) {
  return rep.mrugala_direct(at);
}

int FundamentalRelation::arity() const { return impl_->arity(); }

bool FundamentalRelation::in_domain(const Vector& q) const {
  std::span<const double> s(q.data(), static_cast<size_t>(q.size()));
  return q.size() == impl_->arity() && impl_->domain(s);
}

bool FundamentalRelation::in_domain_raw(std::span<const double> q) const {
  return impl_->domain(q);
}

void FundamentalRelation::require_domain(const Vector& q) const {
  if (!in_domain(q)) throw DomainError("point outside the model domain");
}

double FundamentalRelation::value(const Vector& q) const {
  require_domain(q);
  std::vector<double> xs(q.data(), q.data() + q.size());
  return impl_->e0(xs);
}

Vector FundamentalRelation::gradient(const Vector& q) const {
  require_domain(q);
  auto m = static_cast<size_t>(q.size());
  std::vector<D1> xs(m);
  for (size_t i = 0; i < m; ++i) xs[i] = D1{q[static_cast<Eigen::Index>(i)], 0.0};
  Vector g(q.size());
  for (size_t k = 0; k < m; ++k) {
    xs[k].d = 1.0;
    g[static_cast<Eigen::Index>(k)] = impl_->e1(xs).d;
    xs[k].d = 0.0;
  }
  return g;
}

Matrix FundamentalRelation::hessian(const Vector& q) const {
  require_domain(q);
  auto m = static_cast<size_t>(q.size());
  std::vector<D2> xs(m);
  for (size_t i = 0; i < m; ++i) xs[i] = D2{D1{q[static_cast<Eigen::Index>(i)], 0.0}, D1{}};
  Matrix h(q.size(), q.size());
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      xs[i].v.d = 1.0;
      xs[j].d.v = 1.0;
      double hij = impl_->e2(xs).d.d;
      xs[i].v.d = 0.0;
      xs[j].d.v = 0.0;
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hij;
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = hij;
    }
  }
  return h;
}

std::vector<Matrix> FundamentalRelation::third(const Vector& q) const {
  require_domain(q);
  auto m = static_cast<size_t>(q.size());
  std::vector<Matrix> out(m, Matrix::Zero(q.size(), q.size()));
  std::vector<D3> xs(m);
  for (size_t i = 0; i < m; ++i) {
    xs[i] = D3{D2{D1{q[static_cast<Eigen::Index>(i)], 0.0}, D1{}}, D2{}};
  }
  for (size_t k = 0; k < m; ++k) {
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        xs[i].v.v.d = 1.0;
        xs[j].v.d.v = 1.0;
        xs[k].d.v.v = 1.0;
        double t = impl_->e3(xs).d.d.d;
        xs[i].v.v.d = 0.0;
        xs[j].v.d.v = 0.0;
        xs[k].d.v.v = 0.0;
        auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        out[k](ii, jj) = t;
        out[k](jj, ii) = t;
      }
    }
  }
  return out;
}

Vector FundamentalRelation::gradient_fd(const Vector& q) const {
  Vector g(q.size());
  Vector xp = q, xm = q;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(q[i]));
    xp[i] = q[i] + h;
    xm[i] = q[i] - h;
    std::vector<double> a(xp.data(), xp.data() + xp.size());
    std::vector<double> b(xm.data(), xm.data() + xm.size());
    g[i] = (impl_->e0(a) - impl_->e0(b)) / (2 * h);
    xp[i] = q[i];
    xm[i] = q[i];
  }
  return g;
}

D4 FundamentalRelation::eval_raw4(std::span<const D4> q) const { return impl_->e4(q); }

DarbouxPoint legendre_embed(const FundamentalRelation& f, const Vector& q) {
  f.require_domain(q);
  return DarbouxPoint::assemble(f.value(q), -f.gradient(q), q);
}

Matrix embedding_jacobian(const FundamentalRelation& f, const Vector& q) {
  f.require_domain(q);
  int n = f.arity();
  Matrix J(2 * n + 1, n);
  J.row(0) = f.gradient(q).transpose();
  J.block(1, 0, n, n) = -f.hessian(q);
  J.block(1 + n, 0, n, n) = Matrix::Identity(n, n);
  return J;
}

Matrix pullback_metric(const FundamentalRelation& f, const Vector& q) {
  f.require_domain(q);
  return f.hessian(q);
}

Matrix pullback_via_embedding(const FundamentalRelation& f, const Vector& q) {
  Matrix J = embedding_jacobian(f, q);
  return J.transpose() * metric_G(legendre_embed(f, q)) * J;
}

ModelPair model_ideal_gas(const IdealGasParams& params) {
  if (!(params.cv > 0 && params.R > 0 && params.u0 > 0 && params.v0 > 0)) {
    throw DomainError("ideal gas parameters must be positive");
  }
  ModelPair m;
  m.name = "ideal";
  double cv = params.cv, R = params.R, u0 = params.u0, v0 = params.v0, s0 = params.s0;
  m.entropy = FundamentalRelation::from(
      2,
      [cv, R, u0, v0, s0](auto q) {
        using T = std::decay_t<decltype(q[0])>;
        return T(cv) * log(q[0] / T(u0)) + T(R) * log(q[1] / T(v0)) + T(s0);
      },
      [](std::span<const double> q) { return q[0] > 0 && q[1] > 0; });
  m.energy = FundamentalRelation::from(
      2,
      [cv, R, u0, v0, s0](auto q) {
        using T = std::decay_t<decltype(q[0])>;
        // u = u0 exp((s−s0)/cv) (v/v0)^(−R/cv)
        return T(u0) * exp((q[0] - T(s0)) / T(cv)) * exp(T(-R / cv) * log(q[1] / T(v0)));
      },
      [](std::span<const double> q) { return q[1] > 0; });
  m.eos.T_of_uv = [cv](double u, double v) {
    (void)v;
    return u / cv;
  };
  m.eos.p_of_uv = [cv, R](double u, double v) { return R * u / (cv * v); };
  return m;
}

ModelPair model_van_der_waals(const VdwParams& params) {
  if (!(params.a > 0 && params.b > 0 && params.cv > 0)) {
    throw DomainError("van der Waals parameters must be positive");
  }
  ModelPair m;
  m.name = "vdw";
  double a = params.a, b = params.b, cv = params.cv;
  m.entropy = FundamentalRelation::from(
      2,
      [a, b, cv](auto q) {
        using T = std::decay_t<decltype(q[0])>;
        return T(cv) * log(q[0] + T(a) / q[1]) + log(q[1] - T(b));
      },
      [a, b](std::span<const double> q) { return q[1] > b && q[0] + a / q[1] > 0; });
  m.energy = FundamentalRelation::from(
      2,
      [a, b, cv](auto q) {
        using T = std::decay_t<decltype(q[0])>;
        return exp((q[0] - log(q[1] - T(b))) / T(cv)) - T(a) / q[1];
      },
      [b](std::span<const double> q) { return q[1] > b; });
  m.eos.T_of_uv = [a, cv](double u, double v) { return (u + a / v) / cv; };
  m.eos.p_of_uv = [a, b, cv](double u, double v) {
    double T = (u + a / v) / cv;
    return T / (v - b) - a / (v * v);
  };
  return m;
}

FundamentalRelation quadratic_relation(int n) {
  if (n < 1) throw DimensionError("n must be >= 1");
  return FundamentalRelation::from(n, [](auto q) {
    using T = std::decay_t<decltype(q[0])>;
    T acc(0.0);
    for (const auto& qi : q) acc = acc + qi * qi;
    return T(0.5) * acc;
  });
}

double first_law_residual(const ModelPair& model, double u, double v) {
  Vector q(2);
  q << u, v;
  Vector grad = model.entropy.gradient(q);
  double T = model.eos.T_of_uv(u, v);
  double p = model.eos.p_of_uv(u, v);
  double r1 = relative_diff(grad[0], 1.0 / T);
  double r2 = relative_diff(grad[1], p / T);
  return std::max(r1, r2);
}

PhysicalState state_from_energy(const FundamentalRelation& u_of_sv, double s, double v) {
  Vector q(2);
  q << s, v;
  Vector grad = u_of_sv.gradient(q);
  return PhysicalState{u_of_sv.value(q), s, v, grad[0], -grad[1]};
}

PhysicalState state_from_entropy(const FundamentalRelation& s_of_uv, double u, double v) {
  Vector q(2);
  q << u, v;
  Vector grad = s_of_uv.gradient(q);
  require_temperature(1.0 / grad[0]);
  double T = 1.0 / grad[0];
  return PhysicalState{u, s_of_uv.value(q), v, T, T * grad[1]};
}

const FundamentalRelation& ParsedModel::relation(const std::string& rep) const {
  if (pair) {
    if (rep == "energy") return pair->energy;
    if (rep == "entropy") return pair->entropy;
    throw Error("unknown representation '" + rep + "' (expected energy or entropy)");
  }
  return plain;
}

std::vector<std::string> ParsedModel::grid_variables(const std::string& rep) const {
  if (pair) {
    if (rep == "energy") return {"s", "v"};
    if (rep == "entropy") return {"u", "v"};
    throw Error("unknown representation '" + rep + "' (expected energy or entropy)");
  }
  std::vector<std::string> names;
  for (int a = 1; a <= plain.arity(); ++a) names.push_back("q" + std::to_string(a));
  return names;
}

ParsedModel parse_model(const std::string& json_text) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("model") || !cfg["model"].is_string()) {
    throw Error("model config must be a JSON object with a \"model\" name");
  }
  auto number = [&cfg](const char* key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number()) throw Error(std::string("model key \"") + key + "\" must be a number");
    return cfg[key].get<double>();
  };
  ParsedModel out;
  out.name = cfg["model"].get<std::string>();
  if (out.name == "ideal") {
    IdealGasParams p;
    p.cv = number("cv", p.cv);
    p.R = number("R", p.R);
    p.u0 = number("u0", p.u0);
    p.v0 = number("v0", p.v0);
    p.s0 = number("s0", p.s0);
    out.ideal = p;
    out.pair = model_ideal_gas(p);
  } else if (out.name == "vdw") {
    for (const char* key : {"a", "b", "cv"}) {
      if (!cfg.contains(key)) throw Error(std::string("vdw model requires \"") + key + "\"");
    }
    VdwParams p{number("a", 0), number("b", 0), number("cv", 0)};
    out.vdw = p;
    out.pair = model_van_der_waals(p);
  } else if (out.name == "quadratic") {
    double n = number("n", 2);
    if (n != std::floor(n) || n < 1) throw Error("quadratic model key \"n\" must be a positive integer");
    out.plain = quadratic_relation(static_cast<int>(n));
  } else {
    throw Error("unknown model '" + out.name + "' (expected ideal, vdw, or quadratic)");
  }
  return out;
}

RepresentationChangeReport representation_change(const PhysicalState& at) {
  require_temperature(at.T);
  Representation energy = Representation::energy();
  Representation entropy = Representation::entropy();
  DarbouxPoint xu = energy.to_darboux(at);
  DarbouxPoint xs = entropy.to_darboux(at);

  RepresentationChangeReport rep;
  GaugeFactor omega = GaugeFactor::from_expression("1/p1", 2);
  rep.gauged = gauge_transform(xu, omega);

  Matrix Ju = energy.jacobian(at);
  Matrix Js = entropy.jacobian(at);
  Matrix Ju_inv = Ju.inverse();
  Matrix Js_inv = Js.inverse();

  rep.xi_prime_physical = Ju_inv * rep.gauged.xi_prime.comp;
  rep.xi_prime_residual = (rep.xi_prime_physical - Vector::Unit(5, 1)).cwiseAbs().maxCoeff();

  rep.g_prime_physical = Ju.transpose() * rep.gauged.g_prime * Ju;
  rep.g_entropy_physical = Js.transpose() * metric_G(xs) * Js;
  rep.metric_residual = (rep.g_prime_physical - rep.g_entropy_physical).cwiseAbs().maxCoeff();

  rep.phi_prime_physical = Ju_inv * rep.gauged.phi_prime * Ju;
  rep.phi_entropy_physical = Js_inv * phi_matrix(xs) * Js;
  rep.phi_residual = (rep.phi_prime_physical - rep.phi_entropy_physical).cwiseAbs().maxCoeff();

  Matrix Gu = energy.mrugala_direct(at);
  Matrix Gs = entropy.mrugala_direct(at);
  double restriction = 0;
  auto basis = horizontal_basis(xu);
  for (const auto& U : basis) {
    Vector Up = Ju_inv * U.comp;
    for (const auto& V : basis) {
      Vector Vp = Ju_inv * V.comp;
      restriction = std::max(
          restriction, std::abs(Up.dot(Gs * Vp) + (1.0 / at.T) * Up.dot(Gu * Vp)));
    }
  }
  rep.restriction_residual = restriction;

  Vector eta_s = entropy.eta_physical(at);
  Vector eta_u_scaled = (-1.0 / at.T) * energy.eta_physical(at);
  double eta_res = 0;
  for (int i = 0; i < 5; ++i) {
    double diff = std::abs(eta_s[i] - eta_u_scaled[i]);
    if (diff != 0) {
      eta_res = std::max(eta_res, diff / std::max(std::abs(eta_s[i]), std::abs(eta_u_scaled[i])));
    }
  }
  rep.eta_scaling_residual = eta_res;
  return rep;
}

double conformal_check(const FundamentalRelation& energy, const FundamentalRelation& entropy,
                       double s, double v) {
  Vector sv(2), uv(2);
  sv << s, v;
  double u = energy.value(sv);
  uv << u, v;
  double s_back = entropy.value(uv);
  Vector sv_back(2);
  sv_back << s_back, v;
  double u_back = energy.value(sv_back);
  if (std::abs(u_back - u) > 1e-9 * std::max(1.0, std::abs(u))) {
    throw Error("fundamental relations are not mutual inverses at this state");
  }
  Vector grad = energy.gradient(sv);
  double T = grad[0];
  require_temperature(T);
  Matrix gW = energy.hessian(sv);
  Matrix gR = entropy.hessian(uv);
  Matrix A(2, 2);  // Jacobian of (s,v) ↦ (u(s,v), v)
  A << grad[0], grad[1], 0, 1;
  Matrix transported = A.transpose() * gR * A;
  return (transported + (1.0 / T) * gW).cwiseAbs().maxCoeff();
}

ProcessCurve polyline_curve(int n, const std::vector<Vector>& points) {
  if (points.size() < 2) throw DimensionError("polyline needs at least two points");
  for (const auto& pt : points) {
    if (pt.size() != 2 * n + 1) throw DimensionError("polyline point has wrong dimension");
  }
  auto pts = std::make_shared<std::vector<Vector>>(points);
  int segments = static_cast<int>(points.size()) - 1;
  ProcessCurve c;
  c.n = n;
  c.t0 = 0;
  c.t1 = segments;
  c.position = [pts, segments](double t) {
    int i = std::min(std::max(static_cast<int>(std::floor(t)), 0), segments - 1);
    double local = t - i;
    return Vector((1 - local) * (*pts)[static_cast<size_t>(i)] +
                  local * (*pts)[static_cast<size_t>(i) + 1]);
  };
  c.velocity = [pts, segments](double t) {
    int i = std::min(std::max(static_cast<int>(std::floor(t)), 0), segments - 1);
    return Vector((*pts)[static_cast<size_t>(i) + 1] - (*pts)[static_cast<size_t>(i)]);
  };
  return c;
}

LengthResult process_length(const ProcessCurve& curve,
                            const std::function<Matrix(const DarbouxPoint&)>& metric,
                            int steps) {
  if (steps < 2) throw Error("steps must be >= 2");
  LengthResult out;
  double h = (curve.t1 - curve.t0) / steps;
  std::string raw;
  raw.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double t = curve.t0 + (i + 0.5) * h;
    DarbouxPoint at = DarbouxPoint::make(curve.n, curve.position(t));
    Vector vel = curve.velocity(t);
    double norm2 = vel.dot(metric(at) * vel);
    out.length += h * std::sqrt(std::abs(norm2));
    char sign;
    if (norm2 > 1e-12) {
      sign = '+';
      ++out.positive;
    } else if (norm2 < -1e-12) {
      sign = '-';
      ++out.negative;
    } else {
      sign = '0';
      ++out.zero;
    }
    raw += sign;
  }
  // run-length encode: "+*120,-*80"
  for (size_t i = 0; i < raw.size();) {
    size_t j = i;
    while (j < raw.size() && raw[j] == raw[i]) ++j;
    if (!out.profile.empty()) out.profile += ',';
    out.profile += raw[i];
    out.profile += '*';
    out.profile += std::to_string(j - i);
    i = j;
  }
  return out;
}

LengthResult process_length(const ProcessCurve& curve, int steps) {
  return process_length(
      curve, [](const DarbouxPoint& at) { return metric_G(at); }, steps);
}

}  // namespace tps
