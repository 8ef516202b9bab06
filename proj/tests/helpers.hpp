#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "cvtp/gaussian.hpp"

namespace test {

/// \int W d^2g for a Gaussian in coefficient form; one when normalized.
inline double total_mass(const cvtp::GaussianWignerd& g) {
  const Eigen::Matrix2d m = g.precision();
  const Eigen::Vector2d c = g.drift();
  return g.prefactor / std::sqrt(m.determinant()) * std::exp(c.dot(m.inverse() * c) - g.offset);
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace test
