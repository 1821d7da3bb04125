#pragma once

#include <initializer_list>

#include "tps/linalg.hpp"

namespace tps_test {

inline tps::Vector vec(std::initializer_list<double> xs) {
  tps::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline double max_abs_diff(const tps::Matrix& a, const tps::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const tps::Vector& a, const tps::Vector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace tps_test
