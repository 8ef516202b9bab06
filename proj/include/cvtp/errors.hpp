#pragma once

#include <stdexcept>

namespace cvtp {

/// A parameter lies outside the domain where the requested quantity is defined.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A phase-space grid cannot represent the state or kernel to the required accuracy.
struct GridResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two grids that must share sampling do not.
struct GridMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stochastic estimators refuse to run without an explicit seed.
struct SeedRequired : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cvtp
