#pragma once

// Brute-force phase-space numerics on uniform grids, used to certify the closed forms.

#include <complex>
#include <iosfwd>
#include <optional>

#include <Eigen/Dense>

#include "cvtp/gaussian.hpp"
#include "cvtp/state.hpp"

namespace cvtp {

/// Uniform grid over [-L_re, L_re) x [-L_im, L_im) with n samples per axis; the origin is a
/// sample point.
struct GridSpec {
  double half_width_re = 6.0;
  double half_width_im = 6.0;
  int n = 512;

  static GridSpec square(double half_width, int n) { return {half_width, half_width, n}; }

  double spacing_re() const { return 2.0 * half_width_re / n; }
  double spacing_im() const { return 2.0 * half_width_im / n; }
  double re(int j) const { return -half_width_re + j * spacing_re(); }
  double im(int i) const { return -half_width_im + i * spacing_im(); }

  bool operator==(const GridSpec&) const = default;
};

/// Smallest number of samples per axis accepted by the oracle.
inline constexpr int kMinGridSamples = 256;

/// Throws DomainError unless n is a power of two and both half widths are positive.
void validate(const GridSpec& spec);

struct GridOptions {
  int n = 512;
  std::optional<GridSpec> spec;  ///< overrides the automatic choice
};

/// Sampled Wigner function; rows run over Im g, columns over Re g.
struct GridWigner {
  GridSpec spec;
  Eigen::MatrixXd values;
};

GridWigner rasterize(const InputState& in, const GridSpec& spec);
GridWigner rasterize(const GaussianWignerd& g, const GridSpec& spec);

template <typename Function>
GridWigner rasterize_function(Function&& w, const GridSpec& spec) {
  validate(spec);
  GridWigner grid{spec, Eigen::MatrixXd(spec.n, spec.n)};
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      grid.values(i, j) = w(std::complex<double>(spec.re(j), spec.im(i)));
    }
  }
  return grid;
}

/// Grid wide enough to hold the input's tails with `n` samples per axis.
GridSpec auto_grid(const InputState& in, int n = 512);

/// Throws GridResolutionError if `spec` under-resolves the input or truncates its tails.
void check_resolution(const InputState& in, const GridSpec& spec);

/// Gaussian smearing with variance `sigma` per quadrature and rescale by `gain`, by direct
/// quadrature with separable kernel matrices. Throws GridResolutionError when sqrt(sigma)
/// is below two grid spacings.
GridWigner convolve_teleport(const GridWigner& grid, double sigma, double gain);

/// pi * sum g1 g2 dA. Throws GridMismatchError for different grids.
double overlap(const GridWigner& g1, const GridWigner& g2);

double mass(const GridWigner& grid);

struct GridMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d covariance;
};
GridMoments moments(const GridWigner& grid);

/// Debug dumps: header (L_re, L_im, n) followed by the row-major values.
void write_csv(const GridWigner& grid, std::ostream& out);
void write_binary(const GridWigner& grid, std::ostream& out);

}  // namespace cvtp
