#include "tps/gauge.hpp"

#include <cmath>
#include <cstdio>

#include "tps/exprlang.hpp"

namespace tps {

namespace {

std::vector<double> point_as_std(const DarbouxPoint& at) {
  return {at.x.data(), at.x.data() + at.x.size()};
}

}  // namespace

GaugeFactor GaugeFactor::from_field(ScalarField f) {
  GaugeFactor g;
  g.field_ = std::move(f);
  return g;
}

GaugeFactor GaugeFactor::from_expression(const std::string& src, int n) {
  GaugeFactor g;
  g.field_ = expr::to_field(expr::parse_darboux(src, n));
  g.source_ = src;
  return g;
}

double GaugeFactor::value_checked(const DarbouxPoint& at) const {
  double v = field_.value(at.x);
  if (!(std::abs(v) > kSingularThreshold)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    throw GaugeSingularity("conformal factor vanished (value " + std::string(buf) + ")",
                           point_as_std(at));
  }
  return v;
}

Vector GaugeFactor::gradient(const DarbouxPoint& at) const { return field_.gradient(at.x); }

TangentVector zeta(const DarbouxPoint& at, const GaugeFactor& omega) {
  double w = omega.value_checked(at);
  Vector dw = omega.gradient(at);
  Vector raised = inverse_metric_matrix(at) * dw;
  Vector z = (-1.0 / (2.0 * w)) * (phi_matrix(at) * raised);
  return TangentVector{at.n, z};
}

GaugedStructure gauge_transform(const DarbouxPoint& at, const GaugeFactor& omega) {
  GaugedStructure out;
  out.omega = omega.value_checked(at);
  out.d_omega = omega.gradient(at);
  Vector e = eta_covector(at).comp;
  Matrix Phi = phi_matrix(at);
  Matrix Ginv = inverse_metric_matrix(at);

  Vector raised = Ginv * out.d_omega;
  out.zeta = TangentVector{at.n, (-1.0 / (2.0 * out.omega)) * (Phi * raised)};

  out.eta_prime = out.omega * e;

  Vector xi = reeb(at.n).comp;
  out.xi_prime = TangentVector{at.n, (xi + out.zeta.comp) / out.omega};

  // ξ(Ω) is the w-component of dΩ.
  double xi_of_omega = out.d_omega[0];
  out.phi_prime =
      Phi + (1.0 / (2.0 * out.omega)) * (raised - xi_of_omega * xi) * e.transpose();

  Matrix D = d_eta_matrix(at.n);
  out.d_eta_prime = out.omega * D +
                    0.5 * (out.d_omega * e.transpose() - e * out.d_omega.transpose());

  out.g_prime = out.eta_prime * out.eta_prime.transpose() -
                out.phi_prime.transpose() * out.d_eta_prime;
  return out;
}

Matrix closed_form_gprime(const DarbouxPoint& at, const GaugeFactor& omega) {
  double w = omega.value_checked(at);
  Vector e = eta_covector(at).comp;
  Matrix G = metric_G(at);
  Vector zc = zeta(at, omega).comp;
  Vector z = G * zc;  // z = G(ζ, ·)
  double zeta_norm = zc.dot(G * zc);
  Matrix sym = e * z.transpose() + z * e.transpose();  // 2 η⊗ˢz
  return w * (G - sym) + w * (w - 1.0 + zeta_norm) * (e * e.transpose());
}

std::map<std::string, double> verify_gauge(const DarbouxPoint& at, const GaugeFactor& omega) {
  GaugedStructure g = gauge_transform(at, omega);
  Matrix G = metric_G(at);
  Matrix Phi = phi_matrix(at);
  Matrix D = d_eta_matrix(at.n);
  Vector e = eta_covector(at).comp;
  auto basis = horizontal_basis(at);
  int m = at.dim();

  std::map<std::string, double> r;
  r["eta_prime_of_xi_prime"] = std::abs(g.eta_prime.dot(g.xi_prime.comp) - 1.0);

  double d_eta_xi = 0;
  Vector row = g.d_eta_prime.transpose() * g.xi_prime.comp;  // dη′(ξ′, e_i)
  for (int i = 0; i < m; ++i) d_eta_xi = std::max(d_eta_xi, std::abs(row[i]));
  r["d_eta_prime_of_xi_prime_max"] = d_eta_xi;

  r["eta_of_zeta"] = std::abs(e.dot(g.zeta.comp));
  r["d_omega_of_zeta"] = std::abs(g.d_omega.dot(g.zeta.comp));

  // dΩ(X) = 2Ω dη(ζ, X) + ξ(Ω) η(X) over the coordinate basis.
  Vector identity_row =
      2.0 * g.omega * (D.transpose() * g.zeta.comp) + g.d_omega[0] * e - g.d_omega;
  r["d_omega_identity_max"] = identity_row.cwiseAbs().maxCoeff();

  double conformal = 0, phi_inv = 0, nulls = 0, g_xi_hor = 0;
  for (const auto& U : basis) {
    phi_inv = std::max(phi_inv, (g.phi_prime * U.comp - Phi * U.comp).cwiseAbs().maxCoeff());
    g_xi_hor = std::max(g_xi_hor, std::abs(g.xi_prime.comp.dot(g.g_prime * U.comp)));
    nulls = std::max(nulls, std::abs(U.comp.dot(g.g_prime * U.comp)));
    for (const auto& V : basis) {
      double lhs = U.comp.dot(g.g_prime * V.comp);
      double rhs = g.omega * U.comp.dot(G * V.comp);
      conformal = std::max(conformal, std::abs(lhs - rhs));
    }
  }
  r["conformal_horizontal_max"] = conformal;
  r["phi_prime_horizontal_max"] = phi_inv;
  r["null_direction_max"] = nulls;
  r["g_prime_xi_prime_horizontal_max"] = g_xi_hor;
  r["g_prime_xi_prime_norm"] = std::abs(g.xi_prime.comp.dot(g.g_prime * g.xi_prime.comp) - 1.0);
  r["phi_prime_of_xi_prime_max"] = (g.phi_prime * g.xi_prime.comp).cwiseAbs().maxCoeff();

  // (Φ′)² = I − η′⊗ξ′
  Matrix phi2 = g.phi_prime * g.phi_prime;
  Matrix expected = Matrix::Identity(m, m) - g.xi_prime.comp * g.eta_prime.transpose();
  r["phi_prime_squared_max"] = (phi2 - expected).cwiseAbs().maxCoeff();

  r["g_prime_symmetry_max"] = (g.g_prime - g.g_prime.transpose()).cwiseAbs().maxCoeff();
  r["closed_form_agreement_max"] =
      (g.g_prime - closed_form_gprime(at, omega)).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace tps
