#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tps/chart.hpp"
#include "tps/structure.hpp"
#include "tps/thermo.hpp"

namespace tps {

/// Coordinate metric with exact derivatives to second order. Entries are
/// evaluated generically over nested duals, so Christoffel symbols and the
/// curvature tensor come out to roundoff rather than finite-difference
/// accuracy.
class MetricField {
 public:
  MetricField() = default;

  /// f(span<const T> x, span<T> out) writes dim*dim entries row-major.
  template <class F>
  static MetricField from(int dim, F f) {
    MetricField m;
    m.impl_ = std::make_shared<Model<F>>(dim, std::move(f));
    return m;
  }

  static MetricField constant(const Matrix& g);
  static MetricField darboux(int n);  // phase-space metric in coordinates

  /// Hessian metric of a potential; rank-two derivative information of the
  /// entries needs fourth derivatives of the potential, supplied exactly.
  static MetricField hessian_of(const FundamentalRelation& f);

  bool valid() const { return impl_ != nullptr; }
  int dim() const;

  Matrix components(const Vector& x) const;
  std::vector<Matrix> d_components(const Vector& x) const;  // [m](i,j) = ∂_m g_ij
  std::vector<std::vector<Matrix>> dd_components(const Vector& x) const;  // [m][l] = ∂_m∂_l g

 private:
  struct Impl {
    virtual ~Impl() = default;
    virtual int dim() const = 0;
    virtual void e2(std::span<const D2> x, std::span<D2> out) const = 0;
  };

  template <class F>
  struct Model final : Impl {
    int d;
    F f;
    Model(int dim, F g) : d(dim), f(std::move(g)) {}
    int dim() const override { return d; }
    void e2(std::span<const D2> x, std::span<D2> out) const override { f(x, out); }
  };

  std::shared_ptr<const Impl> impl_;
};

/// Γ^k_{ij} = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij), returned as [k](i,j).
std::vector<Matrix> christoffel(const MetricField& g, const Vector& x);

/// Scalar curvature R = g^{σν} R^ρ_{σρν} of the Levi-Civita connection.
double scalar_curvature(const MetricField& g, const Vector& x);

/// Best constant c with ∇ξ ≈ c·Φ (Frobenius projection) plus the residual
/// max |(∇ξ)^k_i − c·Φ^k_i|. The phase-space value is c = −1 at every
/// point and every n.
struct ReebDiagnostic {
  double c = 0;
  double residual = 0;
};
ReebDiagnostic reeb_covariant_diagnostic(const DarbouxPoint& at);

/// One isochore sample on the approach to the critical point.
struct ScanRow {
  double T = 0;
  double R = 0;     // scalar curvature of the Hessian metric of s(u,v)
  double cond = 0;  // spectral condition number of the metric there
};

/// Samples the critical isochore v = v_c from 1.5·T_c down to (1+eps)·T_c
/// and reports the curvature divergence along it.
std::vector<ScanRow> curvature_scan(const VdwParams& params, double eps, int samples);

}  // namespace tps
