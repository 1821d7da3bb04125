#pragma once

#include <map>
#include <string>

#include "tps/chart.hpp"
#include "tps/contact.hpp"
#include "tps/structure.hpp"

namespace tps {

/// Smooth non-vanishing conformal factor. Evaluation checks |Ω| against the
/// singularity threshold and raises GaugeSingularity with the point attached.
class GaugeFactor {
 public:
  static constexpr double kSingularThreshold = 1e-12;

  static GaugeFactor from_field(ScalarField f);
  static GaugeFactor from_expression(const std::string& src, int n);

  const ScalarField& field() const { return field_; }
  const std::string& source() const { return source_; }
  double value_checked(const DarbouxPoint& at) const;
  Vector gradient(const DarbouxPoint& at) const;

 private:
  ScalarField field_;
  std::string source_;  // empty when built programmatically
};

/// All primed objects at one point for one factor:
///   η′ = Ωη,   ξ′ = (ξ + ζ)/Ω,   dη′ = Ω dη + dΩ∧η (½ wedge convention),
///   Φ′ = Φ + (1/2Ω) η ⊗ [G⁻¹(dΩ) − ξ(Ω)ξ],
///   G′ = η′⊗η′ − dη′∘(Φ′⊗I)   (the defining route, not the closed form).
struct GaugedStructure {
  double omega = 0;
  Vector d_omega;     // covector components
  Vector eta_prime;   // covector components
  TangentVector zeta;
  TangentVector xi_prime;
  Matrix phi_prime;
  Matrix d_eta_prime;  // 2-form matrix: dη′(X,Y) = Xᵀ A Y
  Matrix g_prime;
};

/// ζ = −(1/2Ω) Φ[G⁻¹(dΩ)]: horizontal, with dΩ(ζ) = 0.
TangentVector zeta(const DarbouxPoint& at, const GaugeFactor& omega);

GaugedStructure gauge_transform(const DarbouxPoint& at, const GaugeFactor& omega);

/// Collected form G′ = Ω[G − 2η⊗ˢz] + Ω[Ω − 1 + G(ζ,ζ)]η⊗η with z = G(ζ,·);
/// agrees with the defining route to roundoff.
Matrix closed_form_gprime(const DarbouxPoint& at, const GaugeFactor& omega);

/// Named residuals for every identity the primed structure must satisfy.
/// Horizontal maxima run over the 2n-basis (and all of its pairs); the
/// dΩ identity runs over the full coordinate basis.
std::map<std::string, double> verify_gauge(const DarbouxPoint& at, const GaugeFactor& omega);

}  // namespace tps
