#pragma once

// Derivative-free scalar maximization and Gauss-Hermite quadrature.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace cvtp {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [lo, hi], assumed unimodal there.
ScalarMaximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol = 1e-6);

struct MaximizeOptions {
  int scan_points = 64;    ///< uniform coarse scan, endpoints included
  double tol = 1e-6;       ///< absolute tolerance in x
  std::vector<double> seeds;  ///< extra starting points, clamped to the interval
};

/// Multistart maximization: a coarse scan, then from each start (the best scan point and
/// every seed) a bracket expansion followed by golden section. Returns the best point ever
/// evaluated, so narrow peaks located exactly by a seed are not lost and endpoint optima are
/// returned exactly.
ScalarMaximum maximize(const std::function<double(double)>& f, double lo, double hi,
                       const MaximizeOptions& options = {});

/// Nodes and weights for \int e^{-t^2} g(t) dt ~ sum_i w_i g(t_i), by Golub-Welsch.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussHermiteRule gauss_hermite(int order);

}  // namespace cvtp
