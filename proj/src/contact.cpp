#include "tps/contact.hpp"

namespace tps {

CotangentVector eta_covector(const DarbouxPoint& at) {
  int n = at.n;
  Vector e = Vector::Zero(at.dim());
  e[0] = 1.0;
  for (int a = 0; a < n; ++a) e[1 + n + a] = at.p(a);
  return CotangentVector{n, e};
}

double eta(const DarbouxPoint& at, const TangentVector& X) {
  require_same_n(at.n, X.n, "eta");
  return pairing(eta_covector(at), X);
}

TangentVector reeb(int n) {
  TangentVector xi = TangentVector::zero(n);
  xi.comp[0] = 1.0;
  return xi;
}

TangentVector horizontal_P(int n, int a) {
  DarbouxChart chart{n};
  TangentVector P = TangentVector::zero(n);
  P.comp[chart.index_p(a)] = 1.0;
  return P;
}

TangentVector horizontal_Q(const DarbouxPoint& at, int a) {
  DarbouxChart chart{at.n};
  TangentVector Q = TangentVector::zero(at.n);
  Q.comp[chart.index_q(a)] = 1.0;
  Q.comp[0] = -at.p(a);
  return Q;
}

std::vector<TangentVector> horizontal_basis(const DarbouxPoint& at) {
  std::vector<TangentVector> basis;
  basis.reserve(2 * at.n);
  for (int a = 0; a < at.n; ++a) basis.push_back(horizontal_P(at.n, a));
  for (int a = 0; a < at.n; ++a) basis.push_back(horizontal_Q(at, a));
  return basis;
}

Matrix d_eta_matrix(int n) {
  int m = 2 * n + 1;
  Matrix D = Matrix::Zero(m, m);
  for (int a = 0; a < n; ++a) {
    D(1 + a, 1 + n + a) = 0.5;
    D(1 + n + a, 1 + a) = -0.5;
  }
  return D;
}

double d_eta(const DarbouxPoint& at, const TangentVector& X, const TangentVector& Y) {
  require_same_n(at.n, X.n, "d_eta");
  require_same_n(at.n, Y.n, "d_eta");
  double s = 0.0;
  for (int a = 0; a < at.n; ++a) {
    s += X.comp[1 + a] * Y.comp[1 + at.n + a] - Y.comp[1 + a] * X.comp[1 + at.n + a];
  }
  return 0.5 * s;
}

std::pair<TangentVector, TangentVector> split(const DarbouxPoint& at, const TangentVector& X) {
  double vert = eta(at, X);
  TangentVector xi = reeb(at.n);
  TangentVector vertical{at.n, vert * xi.comp};
  TangentVector horizontal{at.n, X.comp - vertical.comp};
  return {vertical, horizontal};
}

TangentVector VectorField::at(const DarbouxPoint& pt) const {
  require_same_n(n, pt.n, "vector field evaluation");
  Vector c(pt.dim());
  for (int i = 0; i < pt.dim(); ++i) c[i] = comp[static_cast<size_t>(i)].value(pt.x);
  return TangentVector{n, c};
}

VectorField VectorField::constant(int n, const Vector& components) {
  VectorField f;
  f.n = n;
  for (Eigen::Index i = 0; i < components.size(); ++i) {
    f.comp.push_back(ScalarField::constant(components[i]));
  }
  return f;
}

VectorField VectorField::reeb(int n) { return constant(n, tps::reeb(n).comp); }

VectorField VectorField::horizontal_P(int n, int a) {
  return constant(n, tps::horizontal_P(n, a).comp);
}

VectorField VectorField::horizontal_Q(int n, int a) {
  DarbouxChart chart{n};
  VectorField f = constant(n, Vector::Zero(2 * n + 1));
  f.comp[static_cast<size_t>(chart.index_q(a))] = ScalarField::constant(1.0);
  int slot = chart.index_p(a);
  f.comp[0] = ScalarField::from([slot](auto x) { return -x[static_cast<size_t>(slot)]; });
  return f;
}

TangentVector lie_bracket(const VectorField& X, const VectorField& Y, const DarbouxPoint& at) {
  require_same_n(X.n, at.n, "lie_bracket");
  require_same_n(Y.n, at.n, "lie_bracket");
  Vector Xc = X.at(at).comp;
  Vector Yc = Y.at(at).comp;
  Vector out(at.dim());
  for (int k = 0; k < at.dim(); ++k) {
    // [X,Y]^k = X(Y^k) − Y(X^k), both directional derivatives exact.
    double xy = Y.comp[static_cast<size_t>(k)].directional(at.x, Xc);
    double yx = X.comp[static_cast<size_t>(k)].directional(at.x, Yc);
    out[k] = xy - yx;
  }
  return TangentVector{at.n, out};
}

double contact_nondegeneracy(const DarbouxPoint& at) {
  auto basis = horizontal_basis(at);
  int m = static_cast<int>(basis.size());
  Matrix B(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      B(i, j) = d_eta(at, basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    }
  }
  return B.determinant();
}

}  // namespace tps
