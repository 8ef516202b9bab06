#include "cvtp/measurement.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "cvtp/errors.hpp"
#include "cvtp/parallel.hpp"

namespace cvtp {

namespace {

Eigen::Matrix2d rotation(double angle) {
  return Eigen::Rotation2Dd(angle).toRotationMatrix();
}

Eigen::Vector2d as_vector(std::complex<double> z) { return {z.real(), z.imag()}; }

// Joint Gaussian of (g', b): g' = g + conj(a) with g the input and (a, b) the shared state.
// All quantities are assembled from the unnormalized arm brackets so that large source
// squeezing does not cancel catastrophically.
struct JointModel {
  Eigen::Vector2d input_mean;
  Eigen::Matrix2d outcome_cov;
  Eigen::Matrix2d regression;  // d E[b | g'] / d g'
  Eigen::Matrix2d conditional_cov;

  JointModel(const GaussianInput& in, const EntangledState& e) {
    const GaussianWignerd w = input_wigner(in);
    const Eigen::Matrix2d input_cov = w.covariance();
    input_mean = w.mean();
    const double n = e.normalization;
    const double alice = n * e.arm1 / 4.0;  // Alice's marginal variance per quadrature
    const double bob = n * e.arm2 / 4.0;
    const double cross = n * std::abs(e.correlation) / 4.0;
    const Eigen::Matrix2d r = rotation(std::arg(e.correlation));

    outcome_cov = input_cov + alice * Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d inv = outcome_cov.inverse();
    regression = -cross * r * inv;
    const Eigen::Matrix2d inner =
        (bob * input_cov + (n / 16.0) * Eigen::Matrix2d::Identity()) * inv;
    conditional_cov = r * inner * r.transpose();
    conditional_cov = 0.5 * (conditional_cov + conditional_cov.transpose()).eval();
  }

  Eigen::Vector2d conditional_mean(const Eigen::Vector2d& outcome) const {
    return regression * (outcome - input_mean);
  }
};

Eigen::Matrix2d displacement_matrix(const TeleportSetting& s) {
  return s.gain * rotation(s.phase);
}

struct StreamSums {
  double overlap = 0.0;
  double overlap_sq = 0.0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d second = Eigen::Matrix2d::Zero();
};

}  // namespace

double OutcomeDistribution::density(std::complex<double> outcome) const {
  const Eigen::Vector2d d = as_vector(outcome) - mean;
  return std::exp(-0.5 * d.dot(covariance.inverse() * d)) /
         (2.0 * std::numbers::pi * std::sqrt(covariance.determinant()));
}

OutcomeDistribution outcome_distribution(const GaussianInput& in, const EntangledState& e) {
  const JointModel m(in, e);
  return {m.input_mean, m.outcome_cov};
}

GaussianWignerd conditional_state(const GaussianInput& in, const EntangledState& e,
                                  std::complex<double> outcome) {
  const JointModel m(in, e);
  return from_moments<double>(m.conditional_mean(as_vector(outcome)), m.conditional_cov);
}

GaussianWignerd displaced_conditional_state(const GaussianInput& in, const EntangledState& e,
                                            const TeleportSetting& s, std::complex<double> outcome) {
  s.validate();
  const JointModel m(in, e);
  const Eigen::Vector2d g = as_vector(outcome);
  return from_moments<double>(m.conditional_mean(g) + displacement_matrix(s) * g,
                              m.conditional_cov);
}

GaussianWignerd averaged_output(const GaussianInput& in, const EntangledState& e,
                                const TeleportSetting& s) {
  s.validate();
  const JointModel m(in, e);
  const Eigen::Matrix2d d = displacement_matrix(s);
  const Eigen::Matrix2d slope = d + m.regression;
  const Eigen::Matrix2d cov = m.conditional_cov + slope * m.outcome_cov * slope.transpose();
  return from_moments<double>(d * m.input_mean, 0.5 * (cov + cov.transpose()));
}

MonteCarloEstimate monte_carlo_output(const GaussianInput& in, const EntangledState& e,
                                      const TeleportSetting& s, std::size_t samples,
                                      std::optional<std::uint64_t> seed) {
  if (!seed) throw SeedRequired("monte_carlo_output: an explicit seed is required");
  if (samples < 2) throw DomainError("monte_carlo_output: need at least two samples");
  s.validate();
  const JointModel m(in, e);
  const Eigen::Matrix2d d = displacement_matrix(s);
  const Eigen::Matrix2d chol = m.outcome_cov.llt().matrixL();
  const GaussianWignerd target = rotate(input_wigner(in), s.phase);

  std::array<StreamSums, kMonteCarloStreams> sums;
  parallel_for(kMonteCarloStreams, [&](std::size_t stream) {
    const std::size_t count =
        samples / kMonteCarloStreams + (stream < samples % kMonteCarloStreams ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(*seed), static_cast<std::uint32_t>(*seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal;
    StreamSums acc;
    for (std::size_t k = 0; k < count; ++k) {
      const Eigen::Vector2d z(normal(engine), normal(engine));
      const Eigen::Vector2d outcome = m.input_mean + chol * z;
      const Eigen::Vector2d mean = m.conditional_mean(outcome) + d * outcome;
      const double f = gaussian_overlap(target, from_moments<double>(mean, m.conditional_cov));
      acc.overlap += f;
      acc.overlap_sq += f * f;
      acc.mean += mean;
      acc.second += mean * mean.transpose();
    }
    sums[stream] = acc;
  });

  StreamSums total;
  for (const StreamSums& part : sums) {
    total.overlap += part.overlap;
    total.overlap_sq += part.overlap_sq;
    total.mean += part.mean;
    total.second += part.second;
  }
  const double count = static_cast<double>(samples);
  MonteCarloEstimate est;
  est.samples = samples;
  est.fidelity = total.overlap / count;
  const double var = (total.overlap_sq / count - est.fidelity * est.fidelity) * count / (count - 1);
  est.standard_error = std::sqrt(std::max(var, 0.0) / count);
  est.mean = total.mean / count;
  est.covariance = m.conditional_cov + total.second / count - est.mean * est.mean.transpose();
  return est;
}

}  // namespace cvtp
