#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "cvtp/errors.hpp"
#include "cvtp/measurement.hpp"
#include "helpers.hpp"

using namespace cvtp;
using cd = std::complex<double>;

namespace {

ChannelParams channel(double t1, double t2, double zeta, double phase = 0.0) {
  ChannelParams p;
  p.t1 = t1;
  p.t2 = t2;
  p.squeezing = zeta;
  p.phase = phase;
  return p;
}

TeleportSetting matched(const ChannelParams& p, double gain) {
  TeleportSetting s = make_setting(p, gain);
  s.phase = lambda_star(p).phase;
  return s;
}

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) { setenv("CVTP_THREADS", value, 1); }
  ~ThreadsEnv() { unsetenv("CVTP_THREADS"); }
};

}  // namespace

TEST_CASE("outcome distribution of a vacuum input") {
  const ChannelParams p = channel(0.9, 0.7, 1.0);
  const EntangledState e = shared_state(p);
  const OutcomeDistribution d = outcome_distribution(GaussianInput{}, e);
  const double v = 0.25 + e.normalization * e.arm1 / 4.0;
  CHECK(test::max_abs_diff(d.covariance, v * Eigen::Matrix2d::Identity()) < 1e-12);
  CHECK(d.mean.norm() == 0.0);
  CHECK(d.density(0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi * v)));
}

TEST_CASE("vacuum conditional mean is a rotated scaling of the outcome") {
  ChannelParams p = channel(0.9, 0.7, 1.0, 0.5);
  p.t2 = std::polar(0.7, 0.3);
  const EntangledState e = shared_state(p);
  const double c = e.normalization * std::abs(e.correlation) / (1.0 + e.normalization * e.arm1);
  const cd outcome(0.8, -0.6);
  const GaussianWignerd b = conditional_state(GaussianInput{}, e, outcome);
  const Eigen::Vector2d expected =
      -c * (Eigen::Rotation2Dd(std::arg(e.correlation)) * Eigen::Vector2d(0.8, -0.6));
  CHECK(test::max_abs_diff(b.mean(), expected) < 1e-12);
}

TEST_CASE("conditional states are physical and match the direct Schur complement") {
  const ChannelParams p = channel(0.8, 0.9, 1.2, 0.2);
  const EntangledState e = shared_state(p);
  const GaussianInput in{0.4, {0.3, 0.1}};
  const GaussianWignerd b = conditional_state(in, e, cd(0.2, 0.5));
  CHECK(b.is_physical());

  const Eigen::Matrix2d sigma_in = input_wigner(in).covariance();
  const Eigen::Matrix2d r = Eigen::Rotation2Dd(std::arg(e.correlation)).toRotationMatrix();
  const Eigen::Matrix2d cross = -(e.normalization * std::abs(e.correlation) / 4.0) * r;
  const Eigen::Matrix2d outcome_cov =
      sigma_in + e.normalization * e.arm1 / 4.0 * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d direct = e.normalization * e.arm2 / 4.0 * Eigen::Matrix2d::Identity() -
                                 cross * outcome_cov.inverse() * cross.transpose();
  CHECK(test::max_abs_diff(b.covariance(), direct) < 1e-12);
}

TEST_CASE("conditional covariance stays accurate under huge squeezing") {
  const ChannelParams p = channel(1.0, 0.9, 20.0);
  const EntangledState e = shared_state(p);
  const GaussianWignerd b = conditional_state(GaussianInput{0.88, {}}, e, 0.0);
  CHECK(b.is_physical());
  CHECK(std::isfinite(b.covariance().norm()));
  CHECK(b.covariance().determinant() > 0.0);
}

TEST_CASE("averaging the displaced conditional states gives the teleport map") {
  ChannelParams twisted = channel(0.9, 0.7, 0.8, 0.4);
  twisted.t1 = std::polar(0.9, -0.3);
  for (const ChannelParams& p : {channel(1, 1, 1.5), channel(0.95, 0.6, 2.0), twisted}) {
    for (const GaussianInput& in : {GaussianInput{}, GaussianInput{0.7, {0.5, -0.9}}}) {
      for (double gain : {lambda_star(p).gain, 1.0}) {
        const TeleportSetting s = matched(p, gain);
        const GaussianWignerd avg = averaged_output(in, shared_state(p), s);
        const GaussianWignerd expected =
            rotate(teleport_map(input_wigner(in), s.sigma, gain), s.phase);
        CHECK(test::max_abs_diff(avg.covariance(), expected.covariance()) < 1e-11);
        CHECK(test::max_abs_diff(avg.mean(), expected.mean()) < 1e-11);
      }
    }
  }
}

TEST_CASE("Monte Carlo needs an explicit seed") {
  const ChannelParams p = channel(1, 0.9, 1.0);
  CHECK_THROWS_AS(monte_carlo_output(GaussianInput{}, shared_state(p), matched(p, 0.9), 100, std::nullopt),
                  SeedRequired);
  CHECK_THROWS_AS(monte_carlo_output(GaussianInput{}, shared_state(p), matched(p, 0.9), 1, 5u),
                  DomainError);
}

TEST_CASE("Monte Carlo estimate is reproducible and thread independent") {
  const ChannelParams p = channel(0.9, 0.7, 0.8, 0.4);
  const GaussianInput in{0.5, {0.3, 0.2}};
  const TeleportSetting s = matched(p, 0.85);
  MonteCarloEstimate a, b;
  {
    ThreadsEnv env("1");
    a = monte_carlo_output(in, shared_state(p), s, 20000, 42u);
  }
  {
    ThreadsEnv env("7");
    b = monte_carlo_output(in, shared_state(p), s, 20000, 42u);
  }
  CHECK(a.fidelity == b.fidelity);
  CHECK(a.standard_error == b.standard_error);
  CHECK(a.mean == b.mean);
  CHECK(a.covariance == b.covariance);
  const MonteCarloEstimate c = monte_carlo_output(in, shared_state(p), s, 20000, 43u);
  CHECK(c.fidelity != a.fidelity);
}

TEST_CASE("Monte Carlo agrees with the closed form") {
  const ChannelParams p = channel(1, 0.8, 1.0);
  const GaussianInput in{0.3, {0.7, 0.0}};
  const TeleportSetting s = matched(p, 0.8);
  const MonteCarloEstimate est = monte_carlo_output(in, shared_state(p), s, 100000, 2024u);
  const double closed = squeezed_fidelity(in, s.sigma, s.gain);
  CHECK(std::abs(est.fidelity - closed) < 3.0 * est.standard_error);
  const GaussianWignerd avg = averaged_output(in, shared_state(p), s);
  CHECK(test::max_abs_diff(est.mean, avg.mean()) < 0.02);
  CHECK(test::max_abs_diff(est.covariance, avg.covariance()) < 0.02);
  CHECK(est.samples == 100000);
}
