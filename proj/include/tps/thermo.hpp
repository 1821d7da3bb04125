#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tps/chart.hpp"
#include "tps/gauge.hpp"
#include "tps/structure.hpp"

namespace tps {

/// Closed-system state; the five physical coordinates are ordered (u, s, v, T, p).
struct PhysicalState {
  double u = 0, s = 0, v = 0, T = 0, p = 0;
  Vector as_vector() const;
};

/// Chart map between physical coordinates and the n = 2 Darboux slots.
/// Energy: (w, p1, p2, q1, q2) = (u, −T, p, s, v), so η pulls back to
/// du − T ds + p dv. Entropy: (s, −1/T, −p/T, u, v), giving
/// ds − (1/T)du − (p/T)dv. The entropy chart is singular at T = 0.
struct Representation {
  enum class Kind { energy, entropy };
  Kind kind = Kind::energy;

  static Representation energy() { return {Kind::energy}; }
  static Representation entropy() { return {Kind::entropy}; }
  std::string name() const { return kind == Kind::energy ? "energy" : "entropy"; }

  DarbouxPoint to_darboux(const PhysicalState& at) const;
  Matrix jacobian(const PhysicalState& at) const;  // 5×5, d(darboux)/d(physical)
  Vector eta_physical(const PhysicalState& at) const;
  Matrix mrugala_direct(const PhysicalState& at) const;    // closed formula
  Matrix mrugala_pullback(const PhysicalState& at) const;  // Jᵀ G J, same by construction
};

/// Mrugała metric in physical coordinates; energy form
/// η_u⊗η_u + ds⊗ˢdT − dv⊗ˢdp, entropy form η_s⊗η_s + du⊗ˢd(1/T) + dv⊗ˢd(p/T).
Matrix mrugala_metric(const Representation& rep, const PhysicalState& at);

/// n-variable potential with exact derivative oracles to order 4.
class FundamentalRelation {
 public:
  FundamentalRelation() = default;

  template <class F, class D>
  static FundamentalRelation from(int arity, F eval, D domain) {
    FundamentalRelation r;
    r.impl_ = std::make_shared<Model<F, D>>(arity, std::move(eval), std::move(domain));
    return r;
  }

  template <class F>
  static FundamentalRelation from(int arity, F eval) {
    return from(arity, std::move(eval), [](std::span<const double>) { return true; });
  }

  bool valid() const { return impl_ != nullptr; }
  int arity() const;
  bool in_domain(const Vector& q) const;
  void require_domain(const Vector& q) const;  // throws DomainError

  double value(const Vector& q) const;
  Vector gradient(const Vector& q) const;
  Matrix hessian(const Vector& q) const;
  std::vector<Matrix> third(const Vector& q) const;  // [k](i,j) = ∂_k∂_i∂_j f
  Vector gradient_fd(const Vector& q) const;         // central differences cross-check

  D4 eval_raw4(std::span<const D4> q) const;  // for Hessian metric fields
  bool in_domain_raw(std::span<const double> q) const;

 private:
  struct Impl {
    virtual ~Impl() = default;
    virtual int arity() const = 0;
    virtual bool domain(std::span<const double> q) const = 0;
    virtual double e0(std::span<const double> q) const = 0;
    virtual D1 e1(std::span<const D1> q) const = 0;
    virtual D2 e2(std::span<const D2> q) const = 0;
    virtual D3 e3(std::span<const D3> q) const = 0;
    virtual D4 e4(std::span<const D4> q) const = 0;
  };

  template <class F, class D>
  struct Model final : Impl {
    int n;
    F f;
    D dom;
    Model(int arity, F eval, D domain) : n(arity), f(std::move(eval)), dom(std::move(domain)) {}
    int arity() const override { return n; }
    bool domain(std::span<const double> q) const override { return dom(q); }
    double e0(std::span<const double> q) const override { return f(q); }
    D1 e1(std::span<const D1> q) const override { return f(q); }
    D2 e2(std::span<const D2> q) const override { return f(q); }
    D3 e3(std::span<const D3> q) const override { return f(q); }
    D4 e4(std::span<const D4> q) const override { return f(q); }
  };

  std::shared_ptr<const Impl> impl_;
};

/// Graph point of f: w = f(q), p_a = −∂f/∂q^a. Tangents of the graph are
/// annihilated by η (integral manifold of the equilibrium connection).
DarbouxPoint legendre_embed(const FundamentalRelation& f, const Vector& q);
Matrix embedding_jacobian(const FundamentalRelation& f, const Vector& q);  // (2n+1)×n

/// Hessian of the potential; equals the pullback of the Mrugała metric
/// along legendre_embed.
Matrix pullback_metric(const FundamentalRelation& f, const Vector& q);
Matrix pullback_via_embedding(const FundamentalRelation& f, const Vector& q);  // Jᵀ G J

struct IdealGasParams {
  double cv = 1, R = 1, u0 = 1, v0 = 1, s0 = 0;
};

/// Gas constant fixed at 1: critical point v_c = 3b, T_c = 8a/(27b).
struct VdwParams {
  double a = 1, b = 1, cv = 1;
  double v_crit() const { return 3 * b; }
  double T_crit() const { return 8 * a / (27 * b); }
};

struct EquationsOfState {
  std::function<double(double, double)> T_of_uv, p_of_uv;
};

struct ModelPair {
  std::string name;
  FundamentalRelation energy;   // u(s, v)
  FundamentalRelation entropy;  // s(u, v)
  EquationsOfState eos;
};

ModelPair model_ideal_gas(const IdealGasParams& params);
ModelPair model_van_der_waals(const VdwParams& params);
FundamentalRelation quadratic_relation(int n);  // f = ½ Σ (q^a)²

/// Max relative residual of ∂s/∂u − 1/T and ∂s/∂v − p/T against the model's
/// own equations of state.
double first_law_residual(const ModelPair& model, double u, double v);

PhysicalState state_from_energy(const FundamentalRelation& u_of_sv, double s, double v);
PhysicalState state_from_entropy(const FundamentalRelation& s_of_uv, double u, double v);

/// Flat JSON model configuration: {"model":"ideal",...}, {"model":"vdw",...},
/// or {"model":"quadratic","n":2}.
struct ParsedModel {
  std::string name;
  std::optional<ModelPair> pair;
  std::optional<VdwParams> vdw;
  std::optional<IdealGasParams> ideal;
  FundamentalRelation plain;  // quadratic only

  const FundamentalRelation& relation(const std::string& rep) const;
  std::vector<std::string> grid_variables(const std::string& rep) const;
};
ParsedModel parse_model(const std::string& json_text);

/// Energy→entropy representation change as the gauge Ω = 1/p₁ = −1/T applied
/// in the energy chart, with everything compared in shared physical
/// coordinates against the entropy-chart structures.
struct RepresentationChangeReport {
  GaugedStructure gauged;  // energy-chart primed objects
  Vector xi_prime_physical;
  Matrix g_prime_physical, g_entropy_physical;
  Matrix phi_prime_physical, phi_entropy_physical;
  double xi_prime_residual = 0;     // vs ∂/∂s
  double metric_residual = 0;       // max |G_u′ − G_s| componentwise
  double phi_residual = 0;          // max |Φ_u′ − Φ_s| componentwise
  double restriction_residual = 0;  // max |G_s(U,V) + (1/T)G_u(U,V)|, horizontal pairs
  double eta_scaling_residual = 0;  // per-component relative, η_s vs −(1/T)η_u
};
RepresentationChangeReport representation_change(const PhysicalState& at);

/// Transports Hess s from (u,v) to (s,v) coordinates along (s,v) ↦ (u(s,v), v)
/// and returns max |transported + (1/T)·Hess u|. Rejects non-inverse pairs.
double conformal_check(const FundamentalRelation& energy, const FundamentalRelation& entropy,
                       double s, double v);

struct ProcessCurve {
  int n = 0;
  double t0 = 0, t1 = 1;
  std::function<Vector(double)> position;  // 2n+1 coordinates
  std::function<Vector(double)> velocity;
};

/// Piecewise-linear curve through the given points, parametrized by
/// t ∈ [0, count−1] with unit time per segment.
ProcessCurve polyline_curve(int n, const std::vector<Vector>& points);

struct LengthResult {
  double length = 0;
  long positive = 0, negative = 0, zero = 0;
  std::string profile;  // run-length encoded per-step signs, e.g. "+*200"
};

/// Composite midpoint integral of √|G(γ̇,γ̇)| with a per-step sign profile;
/// the metric is indefinite, so the sign is part of the result.
LengthResult process_length(const ProcessCurve& curve,
                            const std::function<Matrix(const DarbouxPoint&)>& metric, int steps);
LengthResult process_length(const ProcessCurve& curve, int steps);  // Mrugała G

}  // namespace tps
