#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tps {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension or index out of range for the chart in use.
struct DimensionError : Error {
  using Error::Error;
};

/// A conformal factor hit zero (within threshold) at an evaluation point.
struct GaugeSingularity : Error {
  std::vector<double> point;  ///< Darboux coordinates where the factor vanished
  GaugeSingularity(const std::string& msg, std::vector<double> at)
      : Error(msg), point(std::move(at)) {}
};

/// Point outside the physical domain of a fundamental relation.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace tps
