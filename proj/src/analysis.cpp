#include "tps/analysis.hpp"

#include <cmath>

namespace tps {

namespace {

std::vector<D2> seed_point(const Vector& x) {
  std::vector<D2> xs(static_cast<size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) xs[static_cast<size_t>(i)] = D2{D1{x[i], 0.0}, D1{}};
  return xs;
}

}  // namespace

MetricField MetricField::constant(const Matrix& g) {
  if (g.rows() != g.cols()) throw DimensionError("constant metric must be square");
  auto copy = std::make_shared<Matrix>(g);
  int d = static_cast<int>(g.rows());
  return from(d, [copy, d](std::span<const D2>, std::span<D2> out) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<size_t>(i * d + j)] = D2((*copy)(i, j));
  });
}

MetricField MetricField::darboux(int n) {
  if (n < 1) throw DimensionError("n must be >= 1");
  int d = 2 * n + 1;
  return from(d, [n, d](std::span<const D2> x, std::span<D2> out) {
    auto at = [&out, d](int i, int j) -> D2& { return out[static_cast<size_t>(i * d + j)]; };
    // η ⊗ η with η = dw + Σ p_a dq^a
    std::vector<D2> e(static_cast<size_t>(d), D2(0.0));
    e[0] = D2(1.0);
    for (int a = 0; a < n; ++a) e[static_cast<size_t>(1 + n + a)] = x[static_cast<size_t>(1 + a)];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) at(i, j) = e[static_cast<size_t>(i)] * e[static_cast<size_t>(j)];
    // − Σ dp_a ⊗ˢ dq^a
    for (int a = 0; a < n; ++a) {
      at(1 + a, 1 + n + a) -= D2(0.5);
      at(1 + n + a, 1 + a) -= D2(0.5);
    }
  });
}

MetricField MetricField::hessian_of(const FundamentalRelation& f) {
  if (!f.valid()) throw Error("hessian metric needs a valid relation");
  int d = f.arity();
  return from(d, [f, d](std::span<const D2> x, std::span<D2> out) {
    std::vector<double> base(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) base[static_cast<size_t>(m)] = primal(x[static_cast<size_t>(m)]);
    if (!f.in_domain_raw(base)) throw DomainError("point outside the model domain");
    std::vector<D4> xs(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) {
        for (int m = 0; m < d; ++m) {
          // lift the incoming jets and seed the two Hessian directions on
          // the two fresh dual levels
          xs[static_cast<size_t>(m)] =
              D4{D3{x[static_cast<size_t>(m)], D2(m == i ? 1.0 : 0.0)},
                 D3{D2(m == j ? 1.0 : 0.0), D2(0.0)}};
        }
        D2 hij = f.eval_raw4(xs).d.d;
        out[static_cast<size_t>(i * d + j)] = hij;
        out[static_cast<size_t>(j * d + i)] = hij;
      }
    }
  });
}

int MetricField::dim() const {
  if (!impl_) throw Error("metric field is empty");
  return impl_->dim();
}

Matrix MetricField::components(const Vector& x) const {
  int d = dim();
  if (x.size() != d) throw DimensionError("point dimension does not match the metric");
  auto xs = seed_point(x);
  std::vector<D2> out(static_cast<size_t>(d * d));
  impl_->e2(xs, out);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = out[static_cast<size_t>(i * d + j)].v.v;
  return g;
}

std::vector<Matrix> MetricField::d_components(const Vector& x) const {
  int d = dim();
  if (x.size() != d) throw DimensionError("point dimension does not match the metric");
  auto xs = seed_point(x);
  std::vector<D2> out(static_cast<size_t>(d * d));
  std::vector<Matrix> dg(static_cast<size_t>(d), Matrix(d, d));
  for (int m = 0; m < d; ++m) {
    xs[static_cast<size_t>(m)].v.d = 1.0;
    impl_->e2(xs, out);
    xs[static_cast<size_t>(m)].v.d = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        dg[static_cast<size_t>(m)](i, j) = out[static_cast<size_t>(i * d + j)].v.d;
  }
  return dg;
}

std::vector<std::vector<Matrix>> MetricField::dd_components(const Vector& x) const {
  int d = dim();
  if (x.size() != d) throw DimensionError("point dimension does not match the metric");
  auto xs = seed_point(x);
  std::vector<D2> out(static_cast<size_t>(d * d));
  std::vector<std::vector<Matrix>> ddg(static_cast<size_t>(d),
                                       std::vector<Matrix>(static_cast<size_t>(d), Matrix(d, d)));
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l <= m; ++l) {
      xs[static_cast<size_t>(m)].v.d = 1.0;
      xs[static_cast<size_t>(l)].d.v = 1.0;
      impl_->e2(xs, out);
      xs[static_cast<size_t>(m)].v.d = 0.0;
      xs[static_cast<size_t>(l)].d.v = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double v = out[static_cast<size_t>(i * d + j)].d.d;
          ddg[static_cast<size_t>(m)][static_cast<size_t>(l)](i, j) = v;
          ddg[static_cast<size_t>(l)][static_cast<size_t>(m)](i, j) = v;
        }
      }
    }
  }
  return ddg;
}

namespace {

Matrix checked_inverse(const Matrix& g) {
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw Error("metric is singular at the evaluation point");
  return lu.inverse();
}

std::vector<Matrix> christoffel_from(const Matrix& gi, const std::vector<Matrix>& dg) {
  int d = static_cast<int>(gi.rows());
  std::vector<Matrix> gamma(static_cast<size_t>(d), Matrix::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0;
        for (int l = 0; l < d; ++l) {
          acc += gi(k, l) * (dg[static_cast<size_t>(i)](l, j) + dg[static_cast<size_t>(j)](l, i) -
                             dg[static_cast<size_t>(l)](i, j));
        }
        gamma[static_cast<size_t>(k)](i, j) = 0.5 * acc;
      }
  return gamma;
}

}  // namespace

std::vector<Matrix> christoffel(const MetricField& g, const Vector& x) {
  return christoffel_from(checked_inverse(g.components(x)), g.d_components(x));
}

double scalar_curvature(const MetricField& g, const Vector& x) {
  int d = g.dim();
  Matrix G = g.components(x);
  auto dg = g.d_components(x);
  auto ddg = g.dd_components(x);
  Matrix gi = checked_inverse(G);
  auto gamma = christoffel_from(gi, dg);

  // ∂_m g^{kl} = −g^{ka} (∂_m g_ab) g^{bl}
  std::vector<Matrix> dgi(static_cast<size_t>(d));
  for (int m = 0; m < d; ++m) dgi[static_cast<size_t>(m)] = -gi * dg[static_cast<size_t>(m)] * gi;

  // ∂_m Γ^k_{ij}
  std::vector<std::vector<Matrix>> dgamma(static_cast<size_t>(d),
                                          std::vector<Matrix>(static_cast<size_t>(d)));
  for (int m = 0; m < d; ++m) {
    for (int k = 0; k < d; ++k) {
      Matrix dG_k(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double first = 0, second = 0;
          for (int l = 0; l < d; ++l) {
            double sym = dg[static_cast<size_t>(i)](l, j) + dg[static_cast<size_t>(j)](l, i) -
                         dg[static_cast<size_t>(l)](i, j);
            double dsym = ddg[static_cast<size_t>(m)][static_cast<size_t>(i)](l, j) +
                          ddg[static_cast<size_t>(m)][static_cast<size_t>(j)](l, i) -
                          ddg[static_cast<size_t>(m)][static_cast<size_t>(l)](i, j);
            first += dgi[static_cast<size_t>(m)](k, l) * sym;
            second += gi(k, l) * dsym;
          }
          dG_k(i, j) = 0.5 * (first + second);
        }
      dgamma[static_cast<size_t>(m)].at(static_cast<size_t>(k)) = dG_k;
    }
  }

  // Ricci_{σν} = R^ρ_{σρν}, R = g^{σν} Ricci_{σν}
  double R = 0;
  for (int s = 0; s < d; ++s) {
    for (int nu = 0; nu < d; ++nu) {
      double ric = 0;
      for (int r = 0; r < d; ++r) {
        double term = dgamma[static_cast<size_t>(r)][static_cast<size_t>(r)](nu, s) -
                      dgamma[static_cast<size_t>(nu)][static_cast<size_t>(r)](r, s);
        for (int l = 0; l < d; ++l) {
          term += gamma[static_cast<size_t>(r)](r, l) * gamma[static_cast<size_t>(l)](nu, s) -
                  gamma[static_cast<size_t>(r)](nu, l) * gamma[static_cast<size_t>(l)](r, s);
        }
        ric += term;
      }
      R += gi(s, nu) * ric;
    }
  }
  return R;
}

ReebDiagnostic reeb_covariant_diagnostic(const DarbouxPoint& at) {
  auto gamma = christoffel(MetricField::darboux(at.n), at.x);
  int d = at.dim();
  Matrix M(d, d);  // M(k,i) = (∇_{∂_i} ξ)^k = Γ^k_{i0}
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) M(k, i) = gamma[static_cast<size_t>(k)](i, 0);
  Matrix P = phi_matrix(at);
  double denom = (P.array() * P.array()).sum();
  double c = (M.array() * P.array()).sum() / denom;
  return {c, (M - c * P).cwiseAbs().maxCoeff()};
}

std::vector<ScanRow> curvature_scan(const VdwParams& params, double eps, int samples) {
  if (!(eps > 0)) throw Error("eps must be positive");
  if (samples < 2) throw Error("samples must be >= 2");
  ModelPair model = model_van_der_waals(params);
  MetricField g = MetricField::hessian_of(model.entropy);
  double Tc = params.T_crit();
  double vc = params.v_crit();
  double Thi = 1.5 * Tc, Tlo = (1 + eps) * Tc;
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double T = Thi + (Tlo - Thi) * i / (samples - 1);
    double u = params.cv * T - params.a / vc;
    Vector x(2);
    x << u, vc;
    ScanRow row;
    row.T = T;
    row.R = scalar_curvature(g, x);
    row.cond = condition_number(g.components(x));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tps
