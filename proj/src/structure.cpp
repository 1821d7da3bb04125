#include "tps/structure.hpp"

#include <cmath>

namespace tps {

Matrix metric_G(const DarbouxPoint& at) {
  int n = at.n;
  int m = at.dim();
  Vector e = eta_covector(at).comp;
  Matrix G = e * e.transpose();
  for (int a = 0; a < n; ++a) {
    G(1 + a, 1 + n + a) -= 0.5;
    G(1 + n + a, 1 + a) -= 0.5;
  }
  (void)m;
  return G;
}

double metric_apply(const Matrix& M, const TangentVector& X, const TangentVector& Y) {
  if (M.rows() != X.comp.size() || M.cols() != Y.comp.size()) {
    throw DimensionError("metric_apply: dimension mismatch");
  }
  return X.comp.dot(M * Y.comp);
}

Matrix phi_matrix(const DarbouxPoint& at) {
  int n = at.n;
  Matrix P = Matrix::Zero(at.dim(), at.dim());
  for (int a = 0; a < n; ++a) {
    P(1 + a, 1 + a) = 1.0;            // ΦP^a = P^a
    P(1 + n + a, 1 + n + a) = -1.0;   // Φ∂_{q^a} = p_a∂_w − ∂_{q^a}
    P(0, 1 + n + a) = at.p(a);
  }
  return P;
}

TangentVector phi(const DarbouxPoint& at, const TangentVector& X) {
  require_same_n(at.n, X.n, "phi");
  return TangentVector{at.n, phi_matrix(at) * X.comp};
}

Matrix inverse_metric_matrix(const DarbouxPoint& at) {
  int n = at.n;
  Matrix Gi = Matrix::Zero(at.dim(), at.dim());
  Gi(0, 0) = 1.0;
  for (int a = 0; a < n; ++a) {
    Gi(1 + a, 1 + n + a) = -2.0;
    Gi(1 + n + a, 1 + a) = -2.0;
    Gi(0, 1 + a) = 2.0 * at.p(a);
    Gi(1 + a, 0) = 2.0 * at.p(a);
  }
  return Gi;
}

TangentVector inverse_metric(const DarbouxPoint& at, const CotangentVector& alpha) {
  require_same_n(at.n, alpha.n, "inverse_metric");
  return TangentVector{at.n, inverse_metric_matrix(at) * alpha.comp};
}

double compatibility_check(const DarbouxPoint& at, const TangentVector& X,
                           const TangentVector& Y) {
  double g = metric_apply(metric_G(at), X, Y);
  double ee = eta(at, X) * eta(at, Y);
  double de = d_eta(at, phi(at, X), Y);
  return std::abs(g - ee + de);
}

}  // namespace tps
