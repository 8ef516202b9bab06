#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cvtp/gaussian.hpp"
#include "cvtp/state.hpp"
#include "helpers.hpp"

using namespace cvtp;
using cd = std::complex<double>;

namespace {

GaussianWignerd vacuum() { return make_gaussian<double>(2.0, 0.0, 0.0); }

// A mixed, displaced, rotated-squeezed test state.
GaussianWignerd generic_state() {
  Eigen::Matrix2d cov;
  cov << 0.7, 0.2, 0.2, 0.35;
  return from_moments<double>(Eigen::Vector2d(0.4, -1.1), cov);
}

}  // namespace

TEST_CASE("vacuum coefficients and moments") {
  const GaussianWignerd v = vacuum();
  CHECK(v.prefactor == doctest::Approx(2.0));
  CHECK(v.purity() == doctest::Approx(1.0));
  CHECK(v.is_physical());
  CHECK(test::max_abs_diff(v.covariance(), 0.25 * Eigen::Matrix2d::Identity()) < 1e-15);
  CHECK(evaluate(v, cd(0.0)) == doctest::Approx(2.0 / std::numbers::pi));
  CHECK(test::total_mass(v) == doctest::Approx(1.0));
}

TEST_CASE("make_gaussian rejects non-normalizable forms") {
  CHECK_THROWS_AS(make_gaussian<double>(1.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(make_gaussian<double>(-1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_gaussian<double>(1.0, cd(0.0, 0.6), 0.0), DomainError);
}

TEST_CASE("from_moments round trip") {
  const GaussianWignerd g = generic_state();
  Eigen::Matrix2d cov;
  cov << 0.7, 0.2, 0.2, 0.35;
  CHECK(test::max_abs_diff(g.covariance(), cov) < 1e-14);
  CHECK(test::max_abs_diff(g.mean(), Eigen::Vector2d(0.4, -1.1)) < 1e-14);
  CHECK(test::total_mass(g) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(g.is_physical());
}

TEST_CASE("overlaps of pure states") {
  const GaussianWignerd v = vacuum();
  CHECK(gaussian_overlap(v, v) == doctest::Approx(1.0));

  const GaussianWignerd coh = input_wigner(GaussianInput{0.0, {0.6, -0.3}});
  CHECK(gaussian_overlap(v, coh) == doctest::Approx(std::exp(-0.45)).epsilon(1e-14));

  const GaussianWignerd sq = input_wigner(GaussianInput{0.88, {}});
  CHECK(gaussian_overlap(sq, sq) == doctest::Approx(1.0).epsilon(1e-13));
  // |<0|S(r)|0>|^2 = 1 / cosh r.
  CHECK(gaussian_overlap(v, sq) == doctest::Approx(1.0 / std::cosh(0.88)).epsilon(1e-13));
  CHECK(gaussian_overlap(v, sq) == doctest::Approx(0.707794).epsilon(1e-6));

  const GaussianWignerd sqc = input_wigner(GaussianInput{1.3, {0.5, 1.2}});
  CHECK(gaussian_overlap(sqc, sqc) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlap of a mixed state with itself is its purity") {
  const GaussianWignerd g = generic_state();
  CHECK(gaussian_overlap(g, g) == doctest::Approx(g.purity()).epsilon(1e-13));
  CHECK(g.purity() < 1.0);
}

TEST_CASE("rotation moves the mean and preserves overlaps") {
  const GaussianWignerd g = input_wigner(GaussianInput{0.6, {1.0, 0.2}});
  const double phi = 0.7;
  const GaussianWignerd r = rotate(g, phi);
  const Eigen::Vector2d expected = Eigen::Rotation2Dd(phi) * g.mean();
  CHECK(test::max_abs_diff(r.mean(), expected) < 1e-13);
  CHECK(evaluate(r, cd(0.3, -0.4) * std::polar(1.0, phi)) ==
        doctest::Approx(evaluate(g, cd(0.3, -0.4))).epsilon(1e-13));
  const GaussianWignerd h = generic_state();
  CHECK(gaussian_overlap(rotate(g, phi), rotate(h, phi)) ==
        doctest::Approx(gaussian_overlap(g, h)).epsilon(1e-13));
}

TEST_CASE("teleport map of the vacuum at sigma 1/2") {
  const GaussianWignerd out = teleport_map(vacuum(), 0.5, 1.0);
  CHECK(out.isotropic == doctest::Approx(2.0 / 3.0));
  CHECK(out.prefactor == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(out.anisotropic) == 0.0);
  CHECK(out.offset == 0.0);
  CHECK(gaussian_overlap(vacuum(), out) == doctest::Approx(0.5));
}

TEST_CASE("teleport map agrees with the covariance route") {
  const GaussianWignerd g = generic_state();
  for (double noise : {1e-3, 0.1, 0.5, 2.0}) {
    for (double gain : {0.3, 0.9, 1.0, 1.7}) {
      const GaussianWignerd out = teleport_map(g, noise, gain);
      const Eigen::Matrix2d cov =
          gain * gain * (g.covariance() + noise * Eigen::Matrix2d::Identity());
      CHECK(test::max_abs_diff(out.covariance(), cov) < 1e-12);
      CHECK(test::max_abs_diff(out.mean(), gain * g.mean()) < 1e-12);
      CHECK(test::total_mass(out) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("gain below one can break the uncertainty relation") {
  // The vacuum stays physical exactly when sigma >= (1 - gain^2) / (4 gain^2).
  const double gain = 0.5;
  const double edge = (1 - gain * gain) / (4 * gain * gain);
  CHECK(teleport_map(vacuum(), edge * 1.01, gain).is_physical());
  CHECK_FALSE(teleport_map(vacuum(), edge * 0.99, gain).is_physical());
  CHECK(teleport_map(vacuum(), edge, gain).purity() == doctest::Approx(1.0));
}

TEST_CASE("teleport maps compose") {
  const GaussianWignerd g = input_wigner(GaussianInput{0.9, {0.8, -0.4}});
  const double s1 = 0.2, l1 = 0.8, s2 = 0.35, l2 = 1.3;
  const GaussianWignerd twice = teleport_map(teleport_map(g, s1, l1), s2, l2);
  const GaussianWignerd once = teleport_map(g, s1 + s2 / (l1 * l1), l1 * l2);
  CHECK(twice.isotropic == doctest::Approx(once.isotropic).epsilon(1e-13));
  CHECK(std::abs(twice.anisotropic - once.anisotropic) < 1e-13);
  CHECK(std::abs(twice.linear - once.linear) < 1e-13);
  CHECK(twice.offset == doctest::Approx(once.offset).epsilon(1e-13));
  CHECK(twice.prefactor == doctest::Approx(once.prefactor).epsilon(1e-13));
}

TEST_CASE("teleport map is continuous at vanishing noise") {
  const GaussianWignerd g = input_wigner(GaussianInput{2.0, {1.0, 0.5}});
  const GaussianWignerd out = teleport_map(g, 1e-14, 1.0);
  CHECK(out.isotropic == doctest::Approx(g.isotropic).epsilon(1e-10));
  CHECK(std::abs(out.linear - g.linear) < 1e-9 * std::abs(g.linear));
  CHECK(gaussian_overlap(g, out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("teleport map domain") {
  CHECK_THROWS_AS(teleport_map(vacuum(), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(teleport_map(vacuum(), -0.1, 1.0), DomainError);
  CHECK_THROWS_AS(teleport_map(vacuum(), 0.1, 0.0), DomainError);
}

TEST_CASE("single precision instantiation") {
  const GaussianWigner<float> v = make_gaussian<float>(2.0f, 0.0f, 0.0f);
  const GaussianWigner<float> out = teleport_map(v, 0.5f, 1.0f);
  CHECK(gaussian_overlap(v, out) == doctest::Approx(0.5).epsilon(1e-6));
}
