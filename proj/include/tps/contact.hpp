#pragma once

#include <utility>
#include <vector>

#include "tps/chart.hpp"

namespace tps {

/// η = dw + Σ p_a dq^a as a covector at the point.
CotangentVector eta_covector(const DarbouxPoint& at);
double eta(const DarbouxPoint& at, const TangentVector& X);

/// Reeb field ξ = ∂_w: η(ξ) = 1, dη(ξ, ·) = 0.
TangentVector reeb(int n);

/// P^a = ∂_{p_a}, Q_a = ∂_{q^a} − p_a ∂_w; η annihilates both.
TangentVector horizontal_P(int n, int a);
TangentVector horizontal_Q(const DarbouxPoint& at, int a);
std::vector<TangentVector> horizontal_basis(const DarbouxPoint& at);  // P^1..P^n, Q_1..Q_n

/// Matrix D of the 2-form dη: dη(X, Y) = Xᵀ D Y with
/// dη(X,Y) = ½ Σ [dp_a(X) dq^a(Y) − dp_a(Y) dq^a(X)].
Matrix d_eta_matrix(int n);
double d_eta(const DarbouxPoint& at, const TangentVector& X, const TangentVector& Y);

/// X = η(X)·ξ + horizontal remainder.
std::pair<TangentVector, TangentVector> split(const DarbouxPoint& at, const TangentVector& X);

/// Vector field with scalar-field components in the coordinate basis.
struct VectorField {
  int n = 0;
  std::vector<ScalarField> comp;  // 2n+1 entries

  TangentVector at(const DarbouxPoint& pt) const;
  static VectorField constant(int n, const Vector& components);
  static VectorField reeb(int n);
  static VectorField horizontal_P(int n, int a);
  static VectorField horizontal_Q(int n, int a);
};

/// Commutator [X, Y] evaluated at a point via the exact derivative oracle.
TangentVector lie_bracket(const VectorField& X, const VectorField& Y, const DarbouxPoint& at);

/// det of dη restricted to the horizontal basis; equals (¼)^n at every point,
/// which is the non-degeneracy form of maximal non-integrability.
double contact_nondegeneracy(const DarbouxPoint& at);

}  // namespace tps
