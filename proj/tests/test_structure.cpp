#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tps/sampling.hpp"
#include "tps/structure.hpp"

using namespace tps;
using tps_test::max_abs_diff;
using tps_test::vec;

namespace {

Matrix metric_n1(double p) {
  Matrix G(3, 3);
  G << 1.0, 0.0, p,
       0.0, 0.0, -0.5,
       p, -0.5, p * p;
  return G;
}

}  // namespace

TEST_CASE("metric matrix in one degree of freedom") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  CHECK(max_abs_diff(metric_G(at), metric_n1(-2.0)) == 0.0);
}

TEST_CASE("frame directions have the expected lengths and pairings") {
  Sampler s(101);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 20; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      Matrix G = metric_G(at);
      TangentVector xi = reeb(n);
      CHECK(metric_apply(G, xi, xi) == doctest::Approx(1.0).epsilon(1e-14));
      for (int a = 0; a < n; ++a) {
        TangentVector P = horizontal_P(n, a);
        TangentVector Q = horizontal_Q(at, a);
        CHECK(std::abs(metric_apply(G, P, P)) <= 1e-14);
        CHECK(std::abs(metric_apply(G, Q, Q)) <= 1e-13);
        CHECK(metric_apply(G, P, Q) == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(std::abs(metric_apply(G, xi, Q)) <= 1e-13);
        CHECK(std::abs(metric_apply(G, xi, P)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("metric on an adapted combination") {
  // X = 2 xi + 1 P^1 + 3 Q_1: G(X, X) = 4 - 2*(1/2)*1*3 = 1
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.4, -1.2, 0.9}));
  AdaptedVector A{2.0, vec({1.0}), vec({3.0})};
  TangentVector X = from_adapted(A, at);
  CHECK(metric_apply(metric_G(at), X, X) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("phi matrix acts as the identity on P and minus one on Q") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  Matrix Phi = phi_matrix(at);

  CHECK(phi(at, reeb(1)).comp.cwiseAbs().maxCoeff() == 0.0);

  TangentVector P = horizontal_P(1, 0);
  TangentVector Q = horizontal_Q(at, 0);
  TangentVector sum = TangentVector::make(1, (P.comp + Q.comp).eval());
  TangentVector diff = TangentVector::make(1, (P.comp - Q.comp).eval());
  CHECK(max_abs_diff(phi(at, sum).comp, diff.comp) <= 1e-15);

  // column action on coordinate directions: d/dq1 = -2 xi + Q_1 maps to -Q_1
  Vector q_col = Phi.col(2);
  CHECK(max_abs_diff(q_col, (-Q.comp).eval()) <= 1e-15);
}

TEST_CASE("phi squared is the projection along the reeb direction") {
  Sampler s(202);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 20; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      Matrix Phi = phi_matrix(at);
      Matrix proj = Matrix::Identity(at.dim(), at.dim()) -
                    reeb(n).comp * eta_covector(at).comp.transpose();
      CHECK(max_abs_diff(Phi * Phi, proj) <= 1e-15);

      TangentVector X = TangentVector::make(n, s.components(at.dim(), -2, 2));
      TangentVector PPX = phi(at, phi(at, X));
      Vector expect = X.comp - eta(at, X) * reeb(n).comp;
      CHECK(max_abs_diff(PPX.comp, expect) <= 1e-14);
    }
  }
}

TEST_CASE("inverse metric matrix in one degree of freedom") {
  double p = -2.0;
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, p, 1.0}));
  Matrix Gi(3, 3);
  Gi << 1.0, 2.0 * p, 0.0,
        2.0 * p, 0.0, -2.0,
        0.0, -2.0, 0.0;
  CHECK(max_abs_diff(inverse_metric_matrix(at), Gi) == 0.0);
}

TEST_CASE("raising an index sends eta to the reeb field") {
  Sampler s(303);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 10; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      TangentVector up = inverse_metric(at, eta_covector(at));
      CHECK(max_abs_diff(up.comp, reeb(n).comp) <= 1e-13);
    }
  }

  // dp1 raises to -2 Q_1 and dq1 raises to -2 P^1
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  Vector dp1 = vec({0.0, 1.0, 0.0});
  Vector dq1 = vec({0.0, 0.0, 1.0});
  CHECK(max_abs_diff(inverse_metric(at, CotangentVector::make(1, dp1)).comp,
                     (-2.0 * horizontal_Q(at, 0).comp).eval()) <= 1e-15);
  CHECK(max_abs_diff(inverse_metric(at, CotangentVector::make(1, dq1)).comp,
                     (-2.0 * horizontal_P(1, 0).comp).eval()) <= 1e-15);
}

TEST_CASE("metric and inverse are mutual inverses") {
  Sampler s(404);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 30; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      Matrix I = Matrix::Identity(at.dim(), at.dim());
      CHECK(max_abs_diff(metric_G(at) * inverse_metric_matrix(at), I) <= 1e-12);
    }
  }
}

TEST_CASE("raised covectors reproduce the pairing through the metric") {
  Sampler s(505);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 20; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      CotangentVector alpha = CotangentVector::make(n, s.components(at.dim(), -2, 2));
      TangentVector Y = TangentVector::make(n, s.components(at.dim(), -2, 2));
      double lhs = metric_apply(metric_G(at), inverse_metric(at, alpha), Y);
      double rhs = pairing(alpha, Y);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("compatibility identity holds on random pairs") {
  DarbouxPoint at = DarbouxPoint::make(1, vec({0.0, -2.0, 1.0}));
  CHECK(compatibility_check(at, reeb(1), reeb(1)) <= 1e-15);
  CHECK(compatibility_check(at, horizontal_P(1, 0), horizontal_Q(at, 0)) <= 1e-15);

  for (int n : {1, 2, 3}) {
    Sampler s(3000 + static_cast<std::uint64_t>(n));
    for (int k = 0; k < 500; ++k) {
      DarbouxPoint pt = s.darboux_point(n);
      TangentVector X = TangentVector::make(n, s.components(pt.dim(), -2, 2));
      TangentVector Y = TangentVector::make(n, s.components(pt.dim(), -2, 2));
      CHECK(compatibility_check(pt, X, Y) <= 1e-13);
    }
  }
}

TEST_CASE("metric restricted to the kernel is minus the polarized two-form") {
  Sampler s(606);
  for (int n : {1, 2}) {
    for (int k = 0; k < 10; ++k) {
      DarbouxPoint at = s.darboux_point(n);
      auto basis = horizontal_basis(at);
      Matrix G = metric_G(at);
      for (const auto& U : basis)
        for (const auto& V : basis) {
          double lhs = -d_eta(at, phi(at, U), V);
          double rhs = metric_apply(G, U, V);
          CHECK(std::abs(lhs - rhs) <= 1e-13);
        }
    }
  }
}

TEST_CASE("signature is (n+1, n) at every sampled point") {
  Sampler s(707);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 10; ++k) {
      Signature sig = signature_of(metric_G(s.darboux_point(n)));
      CHECK(sig.positive == n + 1);
      CHECK(sig.negative == n);
      CHECK(sig.zero == 0);
    }
  }
}
