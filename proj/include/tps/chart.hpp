#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tps/dual.hpp"
#include "tps/errors.hpp"
#include "tps/linalg.hpp"

namespace tps {

/// Coordinate layout of the (2n+1)-dimensional phase space chart:
/// slot 0 is w, slots 1..n are p_1..p_n, slots n+1..2n are q^1..q^n.
struct DarbouxChart {
  int n = 1;

  int dim() const { return 2 * n + 1; }
  int index_w() const { return 0; }
  int index_p(int a) const;  // a in [0, n)
  int index_q(int a) const;
  std::vector<std::string> coordinate_names() const;  // w, p1..pn, q1..qn
};

struct DarbouxPoint {
  int n = 0;
  Vector x;  // layout per DarbouxChart

  static DarbouxPoint make(int n, const Vector& coords);
  static DarbouxPoint assemble(double w, const Vector& p, const Vector& q);
  int dim() const { return 2 * n + 1; }
  double w() const { return x[0]; }
  double p(int a) const { return x[1 + a]; }
  double q(int a) const { return x[1 + n + a]; }
};

/// Components on (∂_w, ∂_{p_a}, ∂_{q^a}). The base point is not stored;
/// point-dependent operations take it explicitly.
struct TangentVector {
  int n = 0;
  Vector comp;

  static TangentVector make(int n, const Vector& components);
  static TangentVector zero(int n);
  int dim() const { return 2 * n + 1; }
};

/// Components on (dw, dp_a, dq^a).
struct CotangentVector {
  int n = 0;
  Vector comp;

  static CotangentVector make(int n, const Vector& components);
  int dim() const { return 2 * n + 1; }
};

/// Components on the adapted frame (ξ, P^a, Q_a).
struct AdaptedVector {
  double xi = 0;
  Vector p;  // coefficients of P^a
  Vector q;  // coefficients of Q_a
};

void require_same_n(int a, int b, const char* what);

/// ⟨α, X⟩ in the coordinate bases (dual bases pair to Kronecker delta).
double pairing(const CotangentVector& alpha, const TangentVector& X);

/// Adapted decomposition at a point: X_ξ = X_w + Σ p_a X_{q^a}, the P^a
/// coefficient is the p_a component, the Q_a coefficient is the q^a component.
AdaptedVector to_adapted(const TangentVector& X, const DarbouxPoint& at);
TangentVector from_adapted(const AdaptedVector& A, const DarbouxPoint& at);

/// Differentiable scalar function on the phase space. Evaluation is generic
/// over (possibly nested) dual numbers, so gradients and Hessians are exact
/// to roundoff; finite differences are provided only as a cross-check.
class ScalarField {
 public:
  ScalarField() = default;

  template <class F>
  static ScalarField from(F f) {
    ScalarField s;
    s.impl_ = std::make_shared<Model<F>>(std::move(f));
    return s;
  }

  static ScalarField constant(double c);
  static ScalarField coordinate(int index);

  bool valid() const { return impl_ != nullptr; }
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  double directional(const Vector& x, const Vector& v) const;  // exact ⟨df, v⟩
  Matrix hessian(const Vector& x) const;

  /// Central differences with step h_i = 1e-6·max(1, |x_i|).
  Vector gradient_fd(const Vector& x) const;
  double directional_fd(const Vector& x, const Vector& v) const;

 private:
  struct Impl {
    virtual ~Impl() = default;
    virtual double e0(std::span<const double> x) const = 0;
    virtual D1 e1(std::span<const D1> x) const = 0;
    virtual D2 e2(std::span<const D2> x) const = 0;
  };

  template <class F>
  struct Model final : Impl {
    F f;
    explicit Model(F g) : f(std::move(g)) {}
    double e0(std::span<const double> x) const override { return f(x); }
    D1 e1(std::span<const D1> x) const override { return f(x); }
    D2 e2(std::span<const D2> x) const override { return f(x); }
  };

  std::shared_ptr<const Impl> impl_;
};

/// Exact gradient as a cotangent value; rejects non-finite results.
CotangentVector differentiate(const ScalarField& f, const DarbouxPoint& at);

}  // namespace tps
