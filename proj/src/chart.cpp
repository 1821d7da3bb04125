#include "tps/chart.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace tps {

namespace {

void require_range(int a, int n, const char* what) {
  if (a < 0 || a >= n) {
    throw DimensionError(std::string(what) + " index out of range");
  }
}

void require_finite(const Vector& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw DimensionError(std::string(what) + " has a non-finite component");
    }
  }
}

std::string coords_to_string(const Vector& x) {
  std::string out = "(";
  char buf[40];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

}  // namespace

int DarbouxChart::index_p(int a) const {
  require_range(a, n, "p");
  return 1 + a;
}

int DarbouxChart::index_q(int a) const {
  require_range(a, n, "q");
  return 1 + n + a;
}

std::vector<std::string> DarbouxChart::coordinate_names() const {
  std::vector<std::string> names;
  names.reserve(dim());
  names.emplace_back("w");
  for (int a = 1; a <= n; ++a) names.push_back("p" + std::to_string(a));
  for (int a = 1; a <= n; ++a) names.push_back("q" + std::to_string(a));
  return names;
}

DarbouxPoint DarbouxPoint::make(int n, const Vector& coords) {
  if (n < 1) throw DimensionError("n must be >= 1");
  if (coords.size() != 2 * n + 1) throw DimensionError("point has wrong dimension");
  require_finite(coords, "point");
  return {n, coords};
}

DarbouxPoint DarbouxPoint::assemble(double w, const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw DimensionError("p and q length mismatch");
  int n = static_cast<int>(p.size());
  Vector x(2 * n + 1);
  x[0] = w;
  x.segment(1, n) = p;
  x.segment(1 + n, n) = q;
  return make(n, x);
}

TangentVector TangentVector::make(int n, const Vector& components) {
  if (n < 1) throw DimensionError("n must be >= 1");
  if (components.size() != 2 * n + 1) throw DimensionError("vector has wrong dimension");
  return {n, components};
}

TangentVector TangentVector::zero(int n) { return make(n, Vector::Zero(2 * n + 1)); }

CotangentVector CotangentVector::make(int n, const Vector& components) {
  if (n < 1) throw DimensionError("n must be >= 1");
  if (components.size() != 2 * n + 1) throw DimensionError("covector has wrong dimension");
  return {n, components};
}

void require_same_n(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

double pairing(const CotangentVector& alpha, const TangentVector& X) {
  require_same_n(alpha.n, X.n, "pairing");
  return alpha.comp.dot(X.comp);
}

AdaptedVector to_adapted(const TangentVector& X, const DarbouxPoint& at) {
  require_same_n(X.n, at.n, "to_adapted");
  int n = at.n;
  AdaptedVector A;
  A.p = X.comp.segment(1, n);
  A.q = X.comp.segment(1 + n, n);
  A.xi = X.comp[0];
  for (int a = 0; a < n; ++a) A.xi += at.p(a) * A.q[a];
  return A;
}

TangentVector from_adapted(const AdaptedVector& A, const DarbouxPoint& at) {
  int n = at.n;
  require_same_n(static_cast<int>(A.p.size()), n, "from_adapted");
  require_same_n(static_cast<int>(A.q.size()), n, "from_adapted");
  Vector c(2 * n + 1);
  double w = A.xi;
  for (int a = 0; a < n; ++a) w -= at.p(a) * A.q[a];
  c[0] = w;
  c.segment(1, n) = A.p;
  c.segment(1 + n, n) = A.q;
  return TangentVector{n, c};
}

ScalarField ScalarField::constant(double c) {
  return from([c](auto x) {
    using T = std::decay_t<decltype(x[0])>;
    (void)x;
    return T(c);
  });
}

ScalarField ScalarField::coordinate(int index) {
  return from([index](auto x) { return x[static_cast<size_t>(index)]; });
}

double ScalarField::value(const Vector& x) const {
  std::vector<double> xs(x.data(), x.data() + x.size());
  return impl_->e0(xs);
}

Vector ScalarField::gradient(const Vector& x) const {
  const auto m = static_cast<size_t>(x.size());
  std::vector<D1> xs(m);
  for (size_t i = 0; i < m; ++i) xs[i] = D1{x[static_cast<Eigen::Index>(i)], 0.0};
  Vector g(x.size());
  for (size_t k = 0; k < m; ++k) {
    xs[k].d = 1.0;
    g[static_cast<Eigen::Index>(k)] = impl_->e1(xs).d;
    xs[k].d = 0.0;
  }
  return g;
}

double ScalarField::directional(const Vector& x, const Vector& v) const {
  const auto m = static_cast<size_t>(x.size());
  std::vector<D1> xs(m);
  for (size_t i = 0; i < m; ++i) {
    auto j = static_cast<Eigen::Index>(i);
    xs[i] = D1{x[j], v[j]};
  }
  return impl_->e1(xs).d;
}

Matrix ScalarField::hessian(const Vector& x) const {
  const auto m = static_cast<size_t>(x.size());
  std::vector<D2> xs(m);
  for (size_t i = 0; i < m; ++i) xs[i] = D2{D1{x[static_cast<Eigen::Index>(i)], 0.0}, D1{0.0, 0.0}};
  Matrix h(x.size(), x.size());
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      xs[i].v.d = 1.0;
      xs[j].d.v = 1.0;
      double hij = impl_->e2(xs).d.d;
      xs[i].v.d = 0.0;
      xs[j].d.v = 0.0;
      auto ii = static_cast<Eigen::Index>(i);
      auto jj = static_cast<Eigen::Index>(j);
      h(ii, jj) = hij;
      h(jj, ii) = hij;
    }
  }
  return h;
}

Vector ScalarField::gradient_fd(const Vector& x) const {
  Vector g(x.size());
  Vector xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (value(xp) - value(xm)) / (2 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

double ScalarField::directional_fd(const Vector& x, const Vector& v) const {
  double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  double h = 1e-6 * scale;
  return (value(x + h * v) - value(x - h * v)) / (2 * h);
}

CotangentVector differentiate(const ScalarField& f, const DarbouxPoint& at) {
  Vector g = f.gradient(at.x);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) {
      throw Error("derivative is not finite at " + coords_to_string(at.x));
    }
  }
  return CotangentVector{at.n, g};
}

}  // namespace tps
