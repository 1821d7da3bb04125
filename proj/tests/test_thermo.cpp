#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "tps/sampling.hpp"
#include "tps/thermo.hpp"

using namespace tps;
using tps_test::max_abs_diff;
using tps_test::vec;

namespace {

PhysicalState reference_state() { return PhysicalState{1.0, 0.0, 1.0, 1.0, 1.0}; }

PhysicalState random_state(Sampler& s, double t_lo = 0.2, double t_hi = 3.0) {
  PhysicalState st;
  st.u = s.box();
  st.s = s.box();
  st.v = s.box();
  st.T = s.uniform(t_lo, t_hi);
  st.p = s.box();
  return st;
}

// u(s, v) = e^s / v: the cv = R = 1 gas with unit reference constants
FundamentalRelation toy_energy() {
  return FundamentalRelation::from(2, [](auto q) { return tps::exp(q[0]) / q[1]; });
}

FundamentalRelation toy_entropy() {
  return FundamentalRelation::from(2, [](auto q) { return tps::log(q[0] * q[1]); });
}

}  // namespace

TEST_CASE("chart maps place the physical coordinates on the right slots") {
  PhysicalState st = reference_state();

  DarbouxPoint xu = Representation::energy().to_darboux(st);
  CHECK(max_abs_diff(xu.x, vec({1.0, -1.0, 1.0, 0.0, 1.0})) == 0.0);

  DarbouxPoint xs = Representation::entropy().to_darboux(st);
  CHECK(max_abs_diff(xs.x, vec({0.0, -1.0, -1.0, 1.0, 1.0})) == 0.0);

  PhysicalState cold = st;
  cold.T = 0.0;
  CHECK_THROWS_AS(Representation::entropy().to_darboux(cold), DomainError);
  CHECK_THROWS_AS(Representation::entropy().eta_physical(cold), DomainError);
}

TEST_CASE("chart jacobians match finite differences of the chart map") {
  Sampler s(13);
  for (const Representation& rep : {Representation::energy(), Representation::entropy()}) {
    for (int k = 0; k < 10; ++k) {
      PhysicalState st = random_state(s);
      Matrix J = rep.jacobian(st);
      Vector base = st.as_vector();
      double h = 1e-6;
      for (int j = 0; j < 5; ++j) {
        Vector fwd = base, bwd = base;
        fwd[j] += h;
        bwd[j] -= h;
        PhysicalState stf{fwd[0], fwd[1], fwd[2], fwd[3], fwd[4]};
        PhysicalState stb{bwd[0], bwd[1], bwd[2], bwd[3], bwd[4]};
        Vector col = (rep.to_darboux(stf).x - rep.to_darboux(stb).x) / (2 * h);
        CHECK(max_abs_diff(col, Vector(J.col(j))) <= 2e-6);
      }
    }
  }
}

TEST_CASE("contact forms in physical coordinates") {
  PhysicalState st{2.0, 0.5, 1.5, 0.8, 1.2};
  Vector eu = Representation::energy().eta_physical(st);
  CHECK(max_abs_diff(eu, vec({1.0, -0.8, 1.2, 0.0, 0.0})) == 0.0);

  Vector es = Representation::entropy().eta_physical(st);
  CHECK(max_abs_diff(es, vec({-1.25, 1.0, -1.5, 0.0, 0.0})) <= 1e-15);

  // the entropy form is the energy form rescaled by -1/T, component by component
  Sampler s(14);
  for (int k = 0; k < 100; ++k) {
    PhysicalState r = random_state(s);
    Vector a = Representation::entropy().eta_physical(r);
    Vector b = (-1.0 / r.T) * Representation::energy().eta_physical(r);
    for (int i = 0; i < 5; ++i) {
      double scale = std::max(std::abs(a[i]), std::abs(b[i]));
      if (scale > 0) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * scale);
    }
  }
}

TEST_CASE("metric entries in physical coordinates") {
  PhysicalState st = reference_state();
  Matrix Gu = Representation::energy().mrugala_direct(st);
  // order (u, s, v, T, p)
  CHECK(Gu(0, 0) == 1.0);
  CHECK(Gu(1, 3) == doctest::Approx(0.5));
  CHECK(Gu(3, 1) == doctest::Approx(0.5));
  CHECK(Gu(2, 4) == doctest::Approx(-0.5));  // pure -dv dp term: eta has no dp component

  PhysicalState warm{1.0, 0.0, 1.0, 0.7, 1.0};
  Matrix Gs = Representation::entropy().mrugala_direct(warm);
  CHECK(Gs(3, 0) == doctest::Approx(-0.5 / (0.7 * 0.7)));
}

TEST_CASE("closed formula and pullback construction of the metric agree") {
  Sampler s(15);
  for (const Representation& rep : {Representation::energy(), Representation::entropy()}) {
    for (int k = 0; k < 50; ++k) {
      PhysicalState st = random_state(s);
      Matrix direct = rep.mrugala_direct(st);
      Matrix pulled = rep.mrugala_pullback(st);
      CHECK(max_abs_diff(direct, pulled) <= 1e-13 * std::max(1.0, max_abs(direct)));
      CHECK(max_abs_diff(mrugala_metric(rep, st), direct) == 0.0);
      CHECK(max_abs_diff(direct, Matrix(direct.transpose())) <= 1e-15);
    }
  }
}

TEST_CASE("fundamental relations expose exact derivatives") {
  FundamentalRelation quad = quadratic_relation(3);
  CHECK(quad.arity() == 3);
  Vector q = vec({1.0, 2.0, -1.0});
  CHECK(quad.value(q) == 3.0);
  CHECK(max_abs_diff(quad.gradient(q), q) == 0.0);
  CHECK(max_abs_diff(quad.hessian(q), Matrix(Matrix::Identity(3, 3))) == 0.0);
  auto third = quad.third(q);
  REQUIRE(third.size() == 3);
  for (const auto& slab : third) CHECK(max_abs(slab) == 0.0);
  CHECK(max_abs_diff(quad.gradient_fd(q), q) <= 1e-6);

  // cubic potential: third derivatives are exact, not differenced
  FundamentalRelation cubic =
      FundamentalRelation::from(2, [](auto x) { return x[0] * x[0] * x[0] * x[1]; });
  Vector at = vec({0.5, 2.0});
  auto t3 = cubic.third(at);
  CHECK(t3[0](0, 0) == doctest::Approx(12.0));  // f_sss = 6v
  CHECK(t3[1](0, 0) == doctest::Approx(3.0));   // f_vss = 6s
}

TEST_CASE("third derivative slabs are fully symmetric") {
  FundamentalRelation f = FundamentalRelation::from(
      2, [](auto x) { return tps::exp(x[0]) * x[1] * x[1] + x[0] * x[1]; });
  Vector at = vec({0.3, 1.7});
  auto t3 = f.third(at);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(t3[static_cast<size_t>(k)](i, j) ==
              doctest::Approx(t3[static_cast<size_t>(i)](k, j)).epsilon(1e-13));
        CHECK(t3[static_cast<size_t>(k)](i, j) ==
              doctest::Approx(t3[static_cast<size_t>(k)](j, i)).epsilon(1e-13));
      }
}

TEST_CASE("domain predicates guard evaluation") {
  VdwParams params{3.0, 1.0 / 3.0, 1.5};
  ModelPair vdw = model_van_der_waals(params);
  CHECK(vdw.entropy.in_domain(vec({1.0, 1.0})));
  CHECK(!vdw.entropy.in_domain(vec({1.0, 0.2})));  // v below the excluded volume
  CHECK_THROWS_AS(vdw.entropy.value(vec({1.0, 0.2})), DomainError);
  CHECK_THROWS_AS(vdw.entropy.gradient(vec({1.0, 0.2})), DomainError);
}

TEST_CASE("graph embedding satisfies the equilibrium condition") {
  FundamentalRelation quad = quadratic_relation(2);
  DarbouxPoint at = legendre_embed(quad, vec({1.0, 2.0}));
  CHECK(max_abs_diff(at.x, vec({2.5, -1.0, -2.0, 1.0, 2.0})) == 0.0);

  DarbouxPoint toy = legendre_embed(toy_energy(), vec({0.0, 1.0}));
  CHECK(max_abs_diff(toy.x, vec({1.0, -1.0, 1.0, 0.0, 1.0})) <= 1e-15);

  // eta annihilates every tangent of the graph
  Sampler s(16);
  for (int k = 0; k < 25; ++k) {
    Vector q = s.components(2, 0.4, 2.0);
    DarbouxPoint pt = legendre_embed(toy_energy(), q);
    Matrix J = embedding_jacobian(toy_energy(), q);
    Vector e = eta_covector(pt).comp;
    CHECK((e.transpose() * J).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("embedding jacobian stacks gradient, curvature, and identity rows") {
  Vector q = vec({0.5, 1.5});
  Matrix J = embedding_jacobian(toy_energy(), q);
  REQUIRE(J.rows() == 5);
  REQUIRE(J.cols() == 2);
  CHECK(max_abs_diff(Vector(J.row(0).transpose()), toy_energy().gradient(q)) == 0.0);
  CHECK(max_abs_diff(Matrix(J.block(1, 0, 2, 2)), Matrix(-toy_energy().hessian(q))) == 0.0);
  CHECK(max_abs_diff(Matrix(J.block(3, 0, 2, 2)), Matrix(Matrix::Identity(2, 2))) == 0.0);
}

TEST_CASE("pullback of the phase-space metric is the hessian of the potential") {
  CHECK(max_abs_diff(pullback_metric(quadratic_relation(2), vec({1.0, 2.0})),
                     Matrix(Matrix::Identity(2, 2))) == 0.0);

  Matrix W = pullback_metric(toy_energy(), vec({0.0, 1.0}));
  Matrix expect(2, 2);
  expect << 1.0, -1.0, -1.0, 2.0;
  CHECK(max_abs_diff(W, expect) <= 1e-15);

  Matrix R = pullback_metric(toy_entropy(), vec({2.0, 3.0}));
  CHECK(R(0, 0) == doctest::Approx(-0.25));
  CHECK(R(1, 1) == doctest::Approx(-1.0 / 9.0));
  CHECK(std::abs(R(0, 1)) <= 1e-16);

  Sampler s(17);
  for (int k = 0; k < 30; ++k) {
    Vector q = s.components(2, 0.4, 2.0);
    for (const FundamentalRelation& f : {toy_energy(), toy_entropy(), quadratic_relation(2)}) {
      Matrix direct = pullback_metric(f, q);
      Matrix via = pullback_via_embedding(f, q);
      CHECK(max_abs_diff(direct, via) <= 1e-10 * std::max(1.0, max_abs(direct)));
    }
  }
}

TEST_CASE("ideal gas relations are mutual inverses with consistent state functions") {
  IdealGasParams params{1.5, 1.0, 1.0, 1.0, 0.0};
  ModelPair gas = model_ideal_gas(params);
  CHECK(gas.name == "ideal");

  CHECK(gas.entropy.value(vec({2.0, 3.0})) ==
        doctest::Approx(1.5 * std::log(2.0) + std::log(3.0)).epsilon(1e-14));

  Sampler s(18);
  for (int k = 0; k < 50; ++k) {
    double u = s.uniform(0.3, 4.0), v = s.uniform(0.3, 4.0);
    double sv = gas.entropy.value(vec({u, v}));
    double u_back = gas.energy.value(vec({sv, v}));
    CHECK(std::abs(u_back - u) <= 1e-12 * std::max(1.0, u));

    CHECK(first_law_residual(gas, u, v) <= 1e-10);

    CHECK(gas.eos.T_of_uv(u, v) == doctest::Approx(u / 1.5).epsilon(1e-14));
    CHECK(gas.eos.p_of_uv(u, v) == doctest::Approx(u / (1.5 * v)).epsilon(1e-14));
  }

  PhysicalState st = state_from_energy(gas.energy, 0.2, 1.3);
  CHECK(st.s == 0.2);
  CHECK(st.v == 1.3);
  CHECK(st.T == doctest::Approx(gas.eos.T_of_uv(st.u, st.v)).epsilon(1e-12));
  CHECK(st.p == doctest::Approx(gas.eos.p_of_uv(st.u, st.v)).epsilon(1e-12));

  PhysicalState st2 = state_from_entropy(gas.entropy, st.u, st.v);
  CHECK(st2.s == doctest::Approx(st.s).epsilon(1e-12));
  CHECK(st2.T == doctest::Approx(st.T).epsilon(1e-12));
  CHECK(st2.p == doctest::Approx(st.p).epsilon(1e-12));
}

TEST_CASE("van der waals relations carry their critical point") {
  VdwParams params{3.0, 1.0 / 3.0, 1.5};
  CHECK(params.v_crit() == doctest::Approx(1.0));
  CHECK(params.T_crit() == doctest::Approx(8.0 / 3.0));

  ModelPair vdw = model_van_der_waals(params);
  Sampler s(19);
  for (int k = 0; k < 50; ++k) {
    double u = s.uniform(0.5, 4.0), v = s.uniform(0.6, 3.0);
    double sv = vdw.entropy.value(vec({u, v}));
    double u_back = vdw.energy.value(vec({sv, v}));
    CHECK(std::abs(u_back - u) <= 1e-11 * std::max(1.0, u));
    CHECK(first_law_residual(vdw, u, v) <= 1e-10);

    double T = vdw.eos.T_of_uv(u, v);
    CHECK(T == doctest::Approx((u + 3.0 / v) / 1.5).epsilon(1e-13));
    CHECK(vdw.eos.p_of_uv(u, v) ==
          doctest::Approx(T / (v - 1.0 / 3.0) - 3.0 / (v * v)).epsilon(1e-12));
  }
}

TEST_CASE("model configuration parses from json") {
  ParsedModel ideal = parse_model(R"({"model":"ideal","cv":1.5,"R":1})");
  CHECK(ideal.name == "ideal");
  REQUIRE(ideal.pair.has_value());
  CHECK(ideal.grid_variables("energy") == std::vector<std::string>{"s", "v"});
  CHECK(ideal.grid_variables("entropy") == std::vector<std::string>{"u", "v"});
  CHECK(&ideal.relation("energy") == &ideal.pair->energy);
  CHECK(&ideal.relation("entropy") == &ideal.pair->entropy);

  ParsedModel vdw = parse_model(R"({"model":"vdw","a":3,"b":0.33333333333333331,"cv":1.5})");
  REQUIRE(vdw.vdw.has_value());
  CHECK(vdw.vdw->a == 3.0);

  ParsedModel quad = parse_model(R"({"model":"quadratic","n":3})");
  CHECK(quad.grid_variables("energy") == std::vector<std::string>{"q1", "q2", "q3"});
  CHECK(quad.relation("energy").arity() == 3);

  CHECK_THROWS_AS(parse_model("not json"), Error);
  CHECK_THROWS_AS(parse_model("[1,2]"), Error);
  CHECK_THROWS_AS(parse_model(R"({"model":"vdw","b":1})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"model":"quadratic","n":0})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"model":"maxwell"})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"model":"ideal","cv":-1})"), DomainError);
}

TEST_CASE("representation change closes at the reference state") {
  RepresentationChangeReport rep = representation_change(reference_state());
  CHECK(rep.xi_prime_residual <= 1e-12);
  CHECK(rep.metric_residual <= 1e-11);
  CHECK(rep.phi_residual <= 1e-11);
  CHECK(rep.restriction_residual <= 1e-10);
  CHECK(rep.eta_scaling_residual <= 1e-15);

  // xi' in physical coordinates is the entropy direction d/ds
  CHECK(max_abs_diff(rep.xi_prime_physical, vec({0.0, 1.0, 0.0, 0.0, 0.0})) <= 1e-12);
}

TEST_CASE("representation change closes across a temperature sweep") {
  Sampler s(20);
  for (int k = 0; k < 100; ++k) {
    PhysicalState st = random_state(s, 0.2, 3.0);
    RepresentationChangeReport rep = representation_change(st);
    CHECK(rep.metric_residual <= 1e-9 * std::max(1.0, max_abs(rep.g_entropy_physical)));
    CHECK(rep.restriction_residual <= 1e-10);
    CHECK(rep.eta_scaling_residual <= 1e-15);
    CHECK(rep.xi_prime_residual <= 1e-11);
    CHECK(rep.phi_residual <= 1e-10);
  }
}

TEST_CASE("hessian transport between the potentials is conformal") {
  CHECK(conformal_check(toy_energy(), toy_entropy(), 0.0, 1.0) <= 1e-12);

  // by hand at (s, v) = (0, 1): A maps the coordinate change, gR sits at (u, v) = (1, 1)
  Matrix A(2, 2), gR(2, 2), gW(2, 2);
  A << 1.0, -1.0, 0.0, 1.0;
  gR << -1.0, 0.0, 0.0, -1.0;
  gW << 1.0, -1.0, -1.0, 2.0;
  Matrix transported = A.transpose() * gR * A;
  Matrix expect(2, 2);
  expect << -1.0, 1.0, 1.0, -2.0;
  CHECK(max_abs_diff(transported, expect) == 0.0);
  CHECK(max_abs_diff(transported, Matrix(-gW)) == 0.0);  // T = 1 here

  IdealGasParams params{1.5, 1.0, 1.0, 1.0, 0.0};
  ModelPair gas = model_ideal_gas(params);
  Sampler s(21);
  for (int k = 0; k < 50; ++k) {
    double sv = s.uniform(-1.0, 1.0), v = s.uniform(0.4, 2.5);
    CHECK(conformal_check(gas.energy, gas.entropy, sv, v) <= 1e-10);
  }

  // mismatched pair is rejected before any transport
  CHECK_THROWS_AS(conformal_check(toy_energy(), quadratic_relation(2), 0.5, 1.0), Error);

  // a state with vanishing temperature is out of the entropy chart
  FundamentalRelation half_s2 =
      FundamentalRelation::from(2, [](auto x) { return x[0] * x[0] * 0.5; });
  FundamentalRelation root_2u = FundamentalRelation::from(
      2, [](auto x) { return tps::sqrt(x[0] + x[0]); },
      [](std::span<const double> x) { return x[0] >= 0; });
  CHECK_THROWS_AS(conformal_check(half_s2, root_2u, 0.0, 1.0), DomainError);
}

TEST_CASE("process length integrates the indefinite arc element") {
  SUBCASE("vertical unit segment has unit timelike length") {
    ProcessCurve seg = polyline_curve(1, {vec({0.0, 0.3, 0.7}), vec({1.0, 0.3, 0.7})});
    LengthResult r = process_length(seg, 200);
    CHECK(std::abs(r.length - 1.0) <= 1e-12);
    CHECK(r.positive == 200);
    CHECK(r.negative == 0);
    CHECK(r.zero == 0);
    CHECK(r.profile == "+*200");
  }

  SUBCASE("momentum segment is null") {
    ProcessCurve seg = polyline_curve(1, {vec({0.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0})});
    LengthResult r = process_length(seg, 100);
    CHECK(r.length == 0.0);
    CHECK(r.zero == 100);
    CHECK(r.profile == "0*100");
  }

  SUBCASE("mixed polyline splits the profile") {
    ProcessCurve seg = polyline_curve(
        1, {vec({0.0, 0.0, 0.0}), vec({1.0, 0.0, 0.0}), vec({1.0, 1.0, 0.0})});
    LengthResult r = process_length(seg, 100);
    CHECK(std::abs(r.length - 1.0) <= 1e-12);
    CHECK(r.positive == 50);
    CHECK(r.zero == 50);
    CHECK(r.profile == "+*50,0*50");
  }

  SUBCASE("frame-following curve is spacelike of unit length") {
    // velocity P^1 + Q_1 along its own flow: G(P+Q, P+Q) = 2 G(P,Q) = -1
    double w0 = 0.5, p0 = -0.3, q0 = 0.2;
    ProcessCurve curve;
    curve.n = 1;
    curve.t0 = 0.0;
    curve.t1 = 1.0;
    curve.position = [=](double t) {
      return Vector(vec({w0 - p0 * t - 0.5 * t * t, p0 + t, q0 + t}));
    };
    curve.velocity = [=](double t) { return Vector(vec({-(p0 + t), 1.0, 1.0})); };
    LengthResult r = process_length(curve, 400);
    CHECK(std::abs(r.length - 1.0) <= 1e-12);
    CHECK(r.negative == 400);
    CHECK(r.profile == "-*400");

    // the same curve against an explicit metric callback
    LengthResult r2 = process_length(curve, [](const DarbouxPoint& at) { return metric_G(at); }, 400);
    CHECK(r2.length == r.length);
  }

  SUBCASE("velocity of a polyline matches differenced positions inside segments") {
    ProcessCurve seg = polyline_curve(
        1, {vec({0.0, 0.0, 0.0}), vec({1.0, 2.0, -1.0}), vec({0.0, 3.0, 1.0})});
    for (double t : {0.25, 0.75, 1.5}) {
      double h = 1e-6;
      Vector fd = (seg.position(t + h) - seg.position(t - h)) / (2 * h);
      CHECK(max_abs_diff(fd, seg.velocity(t)) <= 1e-6);
    }
  }

  SUBCASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(polyline_curve(1, {vec({0.0, 0.0, 0.0})}), DimensionError);
    CHECK_THROWS_AS(polyline_curve(2, {vec({0.0, 0.0, 0.0}), vec({1.0, 0.0, 0.0})}),
                    DimensionError);
    ProcessCurve seg = polyline_curve(1, {vec({0.0, 0.0, 0.0}), vec({1.0, 0.0, 0.0})});
    CHECK_THROWS_AS(process_length(seg, 1), Error);
  }
}
