#include "cvtp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "cvtp/errors.hpp"

namespace cvtp {

namespace {

// K(o, j) = exp(-(x_j - x_o / gain)^2 / (2 sigma)) * dx on one axis.
Eigen::MatrixXd kernel_matrix(int n, double half_width, double sigma, double gain) {
  const double dx = 2.0 * half_width / n;
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(n, -half_width, half_width - dx);
  Eigen::MatrixXd k(n, n);
  for (int o = 0; o < n; ++o) {
    k.row(o) = ((x - x(o) / gain).square() / (-2.0 * sigma)).exp().matrix().transpose() * dx;
  }
  return k;
}

double cell_area(const GridSpec& spec) { return spec.spacing_re() * spec.spacing_im(); }

}  // namespace

void validate(const GridSpec& spec) {
  if (!(spec.half_width_re > 0.0) || !(spec.half_width_im > 0.0)) {
    throw DomainError("grid: half width must be positive");
  }
  if (spec.n <= 0 || !std::has_single_bit(static_cast<std::uint32_t>(spec.n))) {
    throw DomainError("grid: samples per axis must be a power of two");
  }
}

GridWigner rasterize(const InputState& in, const GridSpec& spec) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) return rasterize(input_wigner(*g), spec);
  const int photons = std::get<FockInput>(in).photons;
  return rasterize_function([photons](std::complex<double> z) { return fock_wigner(photons, z); },
                            spec);
}

GridWigner rasterize(const GaussianWignerd& g, const GridSpec& spec) {
  return rasterize_function([&g](std::complex<double> z) { return evaluate(g, z); }, spec);
}

GridSpec auto_grid(const InputState& in, int n) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) {
    const GaussianWignerd w = input_wigner(*g);
    const Eigen::Vector2d mu = w.mean();
    const Eigen::Matrix2d cov = w.covariance();
    return {std::max(4.0, std::abs(mu(0)) + 7.0 * std::sqrt(cov(0, 0))),
            std::max(4.0, std::abs(mu(1)) + 7.0 * std::sqrt(cov(1, 1))), n};
  }
  const int photons = std::get<FockInput>(in).photons;
  return GridSpec::square(std::max(6.0, std::sqrt(photons + 0.5) + 4.0), n);
}

void check_resolution(const InputState& in, const GridSpec& spec) {
  validate(spec);
  if (spec.n < kMinGridSamples) {
    throw GridResolutionError("grid: " + std::to_string(spec.n) + " samples per axis, need at least " +
                              std::to_string(kMinGridSamples));
  }
  if (const auto* g = std::get_if<GaussianInput>(&in)) {
    const GaussianWignerd w = input_wigner(*g);
    const Eigen::Vector2d mu = w.mean();
    const Eigen::Matrix2d cov = w.covariance();
    const double sre = std::sqrt(cov(0, 0));
    const double sim = std::sqrt(cov(1, 1));
    if (std::abs(mu(0)) + 6.0 * sre > spec.half_width_re ||
        std::abs(mu(1)) + 6.0 * sim > spec.half_width_im) {
      throw GridResolutionError("grid: Gaussian input truncated by the grid boundary");
    }
    if (sre < 1.5 * spec.spacing_re() || sim < 1.5 * spec.spacing_im()) {
      throw GridResolutionError("grid: squeezed quadrature narrower than 1.5 grid spacings");
    }
    return;
  }
  const int photons = std::get<FockInput>(in).photons;
  const double turning = std::sqrt(photons + 0.5);
  if (turning + 3.5 > std::min(spec.half_width_re, spec.half_width_im)) {
    throw GridResolutionError("grid: number state truncated by the grid boundary");
  }
  // Radial oscillation period of exp(-2r^2) L_N(4 r^2) near the origin.
  const double period = std::numbers::pi / (2.0 * turning);
  if (period < 8.0 * std::max(spec.spacing_re(), spec.spacing_im())) {
    throw GridResolutionError("grid: number-state oscillations under-resolved (N = " +
                              std::to_string(photons) + ", n = " + std::to_string(spec.n) + ")");
  }
}

GridWigner convolve_teleport(const GridWigner& grid, double sigma, double gain) {
  if (!(sigma > 0.0)) throw DomainError("convolve_teleport: sigma must be positive");
  if (!(gain > 0.0)) throw DomainError("convolve_teleport: gain must be positive");
  const GridSpec& spec = grid.spec;
  if (std::sqrt(sigma) < 2.0 * std::max(spec.spacing_re(), spec.spacing_im())) {
    throw GridResolutionError("convolve_teleport: kernel width below two grid spacings");
  }
  const Eigen::MatrixXd kre = kernel_matrix(spec.n, spec.half_width_re, sigma, gain);
  const Eigen::MatrixXd kim = kernel_matrix(spec.n, spec.half_width_im, sigma, gain);
  GridWigner out{spec, Eigen::MatrixXd()};
  out.values.noalias() = kim * grid.values * kre.transpose();
  out.values /= 2.0 * std::numbers::pi * sigma * gain * gain;
  return out;
}

double overlap(const GridWigner& g1, const GridWigner& g2) {
  if (!(g1.spec == g2.spec)) throw GridMismatchError("overlap: grids differ");
  return std::numbers::pi * cell_area(g1.spec) * g1.values.cwiseProduct(g2.values).sum();
}

double mass(const GridWigner& grid) { return cell_area(grid.spec) * grid.values.sum(); }

GridMoments moments(const GridWigner& grid) {
  const GridSpec& s = grid.spec;
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(s.n, s.re(0), s.re(s.n - 1));
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(s.n, s.im(0), s.im(s.n - 1));
  const double m0 = grid.values.sum();
  const Eigen::VectorXd col = grid.values.colwise().sum().transpose();  // marginal over Im
  const Eigen::VectorXd row = grid.values.rowwise().sum();              // marginal over Re
  GridMoments m;
  m.mean << x.dot(col) / m0, y.dot(row) / m0;
  const Eigen::VectorXd dx = x.array() - m.mean(0);
  const Eigen::VectorXd dy = y.array() - m.mean(1);
  m.covariance(0, 0) = dx.cwiseAbs2().dot(col) / m0;
  m.covariance(1, 1) = dy.cwiseAbs2().dot(row) / m0;
  m.covariance(0, 1) = m.covariance(1, 0) = dy.dot(grid.values * dx) / m0;
  return m;
}

void write_csv(const GridWigner& grid, std::ostream& out) {
  const auto old = out.precision(12);
  out << "half_width_re,half_width_im,n\n"
      << grid.spec.half_width_re << ',' << grid.spec.half_width_im << ',' << grid.spec.n << '\n';
  for (int i = 0; i < grid.spec.n; ++i) {
    for (int j = 0; j < grid.spec.n; ++j) {
      out << (j ? "," : "") << grid.values(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

void write_binary(const GridWigner& grid, std::ostream& out) {
  const std::int64_t n = grid.spec.n;
  out.write(reinterpret_cast<const char*>(&grid.spec.half_width_re), sizeof(double));
  out.write(reinterpret_cast<const char*>(&grid.spec.half_width_im), sizeof(double));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = grid.values;
  out.write(reinterpret_cast<const char*>(rows.data()),
            static_cast<std::streamsize>(rows.size() * sizeof(double)));
}

}  // namespace cvtp
