#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tps/contact.hpp"
#include "tps/sampling.hpp"

using namespace tps;
using tps_test::max_abs_diff;
using tps_test::vec;

TEST_CASE("eta evaluates dw + p dq") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));

  CHECK(eta(at, reeb(1)) == 1.0);
  CHECK(eta(at, horizontal_P(1, 0)) == 0.0);
  CHECK(eta(at, horizontal_Q(at, 0)) == 0.0);

  // X = d/dq1 + d/dw at p1 = -2: eta(X) = 1 + (-2) = -1
  TangentVector X = TangentVector::make(1, vec({1.0, 0.0, 1.0}));
  CHECK(eta(at, X) == -1.0);

  CotangentVector e = eta_covector(at);
  CHECK(max_abs_diff(e.comp, vec({1.0, 0.0, -2.0})) == 0.0);
}

TEST_CASE("reeb field is annihilated by d eta") {
  CHECK(max_abs_diff(reeb(1).comp, vec({1.0, 0.0, 0.0})) == 0.0);

  DarbouxPoint at = DarbouxPoint::make(2, vec({0.2, -1.0, 0.7, 0.4, -0.9}));
  CHECK(d_eta(at, reeb(2), horizontal_P(2, 0)) == 0.0);

  Sampler s(5);
  for (int k = 0; k < 20; ++k) {
    TangentVector Y = TangentVector::make(2, s.components(5, -2, 2));
    CHECK(std::abs(d_eta(at, reeb(2), Y)) <= 1e-15);
  }
}

TEST_CASE("horizontal frame spans the kernel of eta") {
  DarbouxPoint at = DarbouxPoint::make(2, vec({0.0, -2.0, 3.0, 1.0, -1.0}));

  CHECK(max_abs_diff(horizontal_P(2, 0).comp, vec({0.0, 1.0, 0.0, 0.0, 0.0})) == 0.0);
  // Q_1 = d/dq1 - p_1 d/dw
  CHECK(max_abs_diff(horizontal_Q(at, 0).comp, vec({2.0, 0.0, 0.0, 1.0, 0.0})) == 0.0);

  auto basis = horizontal_basis(at);
  REQUIRE(basis.size() == 4);
  for (const auto& B : basis) CHECK(std::abs(eta(at, B)) == 0.0);

  // rank 2n: stack the frame as rows and check full row rank
  Matrix rows(4, 5);
  for (int i = 0; i < 4; ++i) rows.row(i) = basis[static_cast<size_t>(i)].comp.transpose();
  Eigen::FullPivLU<Matrix> lu(rows);
  CHECK(lu.rank() == 4);
}

TEST_CASE("d eta pairs the conjugate frame directions with one half") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  CHECK(d_eta(at, horizontal_P(1, 0), horizontal_Q(at, 0)) == 0.5);
  CHECK(d_eta(at, horizontal_Q(at, 0), horizontal_P(1, 0)) == -0.5);

  Sampler s(11);
  for (int k = 0; k < 20; ++k) {
    TangentVector X = TangentVector::make(1, s.components(3, -2, 2));
    CHECK(d_eta(at, X, X) == 0.0);
  }

  DarbouxPoint at2 = DarbouxPoint::make(2, vec({0.0, 0.5, -0.5, 1.0, 2.0}));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(d_eta(at2, horizontal_P(2, a), horizontal_Q(at2, b)) == (a == b ? 0.5 : 0.0));
      CHECK(d_eta(at2, horizontal_P(2, a), horizontal_P(2, b)) == 0.0);
      CHECK(d_eta(at2, horizontal_Q(at2, a), horizontal_Q(at2, b)) == 0.0);
    }
}

TEST_CASE("split separates the vertical part from the kernel part") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));

  auto [v1, h1] = split(at, reeb(1));
  CHECK(max_abs_diff(v1.comp, reeb(1).comp) == 0.0);
  CHECK(h1.comp.cwiseAbs().maxCoeff() == 0.0);

  TangentVector Q1 = horizontal_Q(at, 0);
  auto [v2, h2] = split(at, Q1);
  CHECK(v2.comp.cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(h2.comp, Q1.comp) == 0.0);

  // d/dq1 = -2*xi + Q_1 at p1 = -2
  TangentVector X = TangentVector::make(1, vec({0.0, 0.0, 1.0}));
  auto [v3, h3] = split(at, X);
  CHECK(max_abs_diff(v3.comp, vec({-2.0, 0.0, 0.0})) == 0.0);
  CHECK(max_abs_diff(h3.comp, vec({2.0, 0.0, 1.0})) == 0.0);

  Sampler s(21);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 25; ++k) {
      DarbouxPoint pt = s.darboux_point(n);
      TangentVector Y = TangentVector::make(n, s.components(2 * n + 1, -2, 2));
      auto [v, h] = split(pt, Y);
      CHECK(max_abs_diff((v.comp + h.comp).eval(), Y.comp) <= 1e-14);
      CHECK(std::abs(eta(pt, h)) <= 1e-14);
      CHECK(std::abs(eta(pt, v) - eta(pt, Y)) <= 1e-14);
    }
  }
}

TEST_CASE("frame commutators close on the reeb direction") {
  for (int n : {1, 2}) {
    Sampler s(33);
    VectorField xiF = VectorField::reeb(n);
    for (int a = 0; a < n; ++a) {
      VectorField Pa = VectorField::horizontal_P(n, a);
      for (int b = 0; b < n; ++b) {
        VectorField Qb = VectorField::horizontal_Q(n, b);
        for (int k = 0; k < 5; ++k) {
          DarbouxPoint at = s.darboux_point(n);
          TangentVector br = lie_bracket(Pa, Qb, at);
          Vector expect = Vector::Zero(2 * n + 1);
          if (a == b) expect[0] = -1.0;  // [P^a, Q_a] = -xi
          CHECK(max_abs_diff(br.comp, expect) <= 1e-12);

          TangentVector brx = lie_bracket(Pa, xiF, at);
          CHECK(brx.comp.cwiseAbs().maxCoeff() <= 1e-12);
        }
      }
      for (int b = 0; b < n; ++b) {
        VectorField Pb = VectorField::horizontal_P(n, b);
        DarbouxPoint at = s.darboux_point(n);
        CHECK(lie_bracket(Pa, Pb, at).comp.cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }

  // [Q_1, Q_2] = 0: the momentum shifts act on different slots
  DarbouxPoint at = DarbouxPoint::make(2, vec({0.1, -0.4, 0.8, 1.2, -0.3}));
  TangentVector br =
      lie_bracket(VectorField::horizontal_Q(2, 0), VectorField::horizontal_Q(2, 1), at);
  CHECK(br.comp.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("lie bracket handles general field coefficients") {
  // X = w d/dw, Y = d/dw: [X, Y] = -d/dw
  VectorField X{1, {ScalarField::coordinate(0), ScalarField::constant(0), ScalarField::constant(0)}};
  VectorField Y = VectorField::reeb(1);
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.7, -1.0, 0.4}));
  CHECK(max_abs_diff(lie_bracket(X, Y, at).comp, vec({-1.0, 0.0, 0.0})) <= 1e-14);
}

TEST_CASE("nondegeneracy of d eta on the kernel is a dimensional constant") {
  DarbouxPoint a1 = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  CHECK(contact_nondegeneracy(a1) == doctest::Approx(0.25).epsilon(1e-14));

  DarbouxPoint a2 = DarbouxPoint::make(2, vec({0.3, 1.0, -1.0, 0.5, 0.5}));
  CHECK(contact_nondegeneracy(a2) == doctest::Approx(0.0625).epsilon(1e-14));

  for (int n : {1, 2, 3}) {
    Sampler s(2000 + static_cast<std::uint64_t>(n));
    double expect = std::pow(0.25, n);
    for (int k = 0; k < 100; ++k) {
      double det = contact_nondegeneracy(s.darboux_point(n));
      CHECK(std::abs(det - expect) <= 1e-14 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("vector field evaluation respects dimensions") {
  VectorField X = VectorField::constant(1, vec({1.0, 2.0, 3.0}));
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -1.0, 1.0}));
  CHECK(max_abs_diff(X.at(at).comp, vec({1.0, 2.0, 3.0})) == 0.0);

  DarbouxPoint wrong = DarbouxPoint::make(2, vec({0.0, -1.0, 1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(X.at(wrong), DimensionError);
}
