#pragma once

#include <cstdint>
#include <random>

#include "tps/chart.hpp"

namespace tps {

/// Deterministic point source for tests and reports. Draws are defined in
/// terms of raw mt19937_64 output only, so streams are identical across
/// platforms and standard-library versions. Coordinates are drawn from the
/// box [−2, −0.1] ∪ [0.1, 2], keeping samples away from coordinate
/// singularities (1/p_a factors, entropy-chart temperatures).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// One coordinate from the two-sided box.
  double box() {
    double magnitude = uniform(0.1, 2.0);
    return (rng_() & 1u) ? magnitude : -magnitude;
  }

  Vector box_point(int dim) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = box();
    return x;
  }

  DarbouxPoint darboux_point(int n) { return DarbouxPoint::make(n, box_point(2 * n + 1)); }

  Vector components(int dim, double lo = -1.0, double hi = 1.0) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = uniform(lo, hi);
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tps
