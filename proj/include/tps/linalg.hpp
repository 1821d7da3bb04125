#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>

namespace tps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Counts of (positive, negative, zero) eigenvalues of a symmetric matrix,
/// with |lambda| <= tol treated as zero.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

inline Signature signature_of(const Matrix& sym, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  Signature s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam > tol)
      ++s.positive;
    else if (lam < -tol)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Spectral condition number of a symmetric matrix (|lambda|_max / |lambda|_min).
inline double condition_number(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  double lo = es.eigenvalues().cwiseAbs().minCoeff();
  double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  return lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo;
}

}  // namespace tps
