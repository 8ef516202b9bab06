#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cvtp/errors.hpp"
#include "cvtp/optimize.hpp"

using namespace cvtp;

TEST_CASE("golden section on a parabola") {
  const ScalarMaximum m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -2.0, 5.0);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-6));
  CHECK_THROWS_AS(golden_section_max([](double) { return 0.0; }, 1.0, 1.0), DomainError);
}

TEST_CASE("endpoint optima are returned exactly") {
  const auto f = [](double x) { return -x; };
  CHECK(maximize(f, 0.0, 1.0).x == 0.0);
  CHECK(maximize([](double x) { return x; }, 0.0, 1.0).x == 1.0);
}

TEST_CASE("a narrow peak is kept when a seed lands on it") {
  const double peak = 0.4567;
  const auto f = [&](double x) {
    const double d = (x - peak) / 1e-9;
    return 0.2 * std::exp(-x) + std::exp(-d * d);
  };
  MaximizeOptions opt;
  CHECK(maximize(f, 0.0, 2.0, opt).x < 1e-3);  // the scan alone misses the needle
  opt.seeds = {peak};
  const ScalarMaximum m = maximize(f, 0.0, 2.0, opt);
  CHECK(m.x == doctest::Approx(peak).epsilon(1e-9));
  CHECK(m.value > 1.0);
}

TEST_CASE("multistart picks the better of two local maxima") {
  const auto f = [](double x) { return std::exp(-(x - 1) * (x - 1) / 0.01) + 2 * std::exp(-(x - 3) * (x - 3) / 0.01); };
  CHECK(maximize(f, 0.0, 4.0).x == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("Gauss-Hermite rule") {
  const GaussHermiteRule one = gauss_hermite(1);
  CHECK(one.nodes(0) == doctest::Approx(0.0));
  CHECK(one.weights(0) == doctest::Approx(std::sqrt(std::numbers::pi)));

  const GaussHermiteRule r = gauss_hermite(10);
  CHECK(r.weights.sum() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  // Exact through degree 19: \int t^{2k} e^{-t^2} = Gamma(k + 1/2).
  for (int k = 1; k <= 9; ++k) {
    const double q = (r.weights.array() * r.nodes.array().pow(2 * k)).sum();
    CHECK(q == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-11));
  }
  CHECK(std::abs((r.weights.array() * r.nodes.array().pow(3)).sum()) < 1e-13);
  CHECK_THROWS_AS(gauss_hermite(0), DomainError);
}
