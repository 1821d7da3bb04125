#pragma once

#include "tps/chart.hpp"
#include "tps/contact.hpp"

namespace tps {

/// Metric G = η⊗η − Σ dp_a ⊗ˢ dq^a (the ⊗ˢ carries the ½ factor), as a
/// matrix in the coordinate basis. Signature (n+1, n); P^a, Q_a are null
/// and G(P^a, Q_b) = −½δ^a_b.
Matrix metric_G(const DarbouxPoint& at);

double metric_apply(const Matrix& M, const TangentVector& X, const TangentVector& Y);

/// Φ with Φξ = 0, ΦP^a = P^a, ΦQ_a = −Q_a, as a matrix acting on
/// coordinate components.
Matrix phi_matrix(const DarbouxPoint& at);
TangentVector phi(const DarbouxPoint& at, const TangentVector& X);

/// G⁻¹ = ξ⊗ξ − 4 Σ P^a ⊗ˢ Q_a; inverse_metric raises the index of α.
Matrix inverse_metric_matrix(const DarbouxPoint& at);
TangentVector inverse_metric(const DarbouxPoint& at, const CotangentVector& alpha);

/// |G(X,Y) − η(X)η(Y) + dη(ΦX, Y)|: the coordinate-free identity
/// G = η⊗η − dη∘(Φ⊗I) evaluated on a pair.
double compatibility_check(const DarbouxPoint& at, const TangentVector& X,
                           const TangentVector& Y);

}  // namespace tps
