#include <doctest.h>

#include <cmath>
#include <limits>

#include "cvtp/errors.hpp"
#include "cvtp/limits_opt.hpp"
#include "cvtp/teleport.hpp"

using namespace cvtp;

namespace {

ChannelParams arms(double t1, double t2, double zeta) {
  ChannelParams p;
  p.t1 = t1;
  p.t2 = t2;
  p.squeezing = zeta;
  return p;
}

double at_bob_distance(const InputState& in, double l2, double zeta) {
  return fidelity_at(in, from_lengths(0.0, l2, 1.0, 1.0, zeta), std::exp(-l2));
}

}  // namespace

TEST_CASE("optimal gain under near-infinite squeezing is |T2/T1|") {
  const LambdaOptimum s = optimize_lambda(GaussianInput{0.88, {}}, arms(1, 0.9, 20));
  CHECK(s.gain == doctest::Approx(0.9).epsilon(1e-3));
  const LambdaOptimum f = optimize_lambda(FockInput{1}, arms(1, 0.9, 20));
  CHECK(f.gain == doctest::Approx(0.9).epsilon(1e-3));
  CHECK(f.fidelity >= fidelity_at(FockInput{1}, arms(1, 0.9, 20), 0.9) - 1e-12);
}

TEST_CASE("vacuum without entanglement prefers no displacement at all") {
  const LambdaOptimum v = optimize_lambda(GaussianInput{}, arms(1, 1, 0));
  CHECK(v.gain == gain_range(arms(1, 1, 0)).lo);
  CHECK(v.fidelity > 0.999);
}

TEST_CASE("perfect channel with strong squeezing wants unit gain") {
  for (const InputState& in : {InputState{GaussianInput{0.5, {1.0, 0.0}}}, InputState{FockInput{2}}}) {
    const LambdaOptimum o = optimize_lambda(in, arms(1, 1, 20));
    CHECK(o.gain == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(o.fidelity == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("average fidelity quadrature") {
  const ChannelParams p = arms(1, 0.5, 3.0);
  for (double n : {0.01, 1.0, 10.0, 1000.0}) {
    for (double g : {0.3, 0.5, 0.8}) {
      const AverageFidelitySpec spec{n, 48};
      CHECK(average_fidelity(spec, p, g, 0.0) ==
            doctest::Approx(average_fidelity_exact(spec, p, g, 0.0)).epsilon(1e-10));
    }
  }
  // Unit gain: nothing depends on the amplitude.
  const ChannelParams q = arms(1, 1, 1.0);
  CHECK(average_fidelity({25.0, 48}, q, 1.0, 0.4) ==
        doctest::Approx(squeezed_vacuum_fidelity(0.4, sigma(q, 1.0), 1.0)).epsilon(1e-10));
  // Vanishing cutoff collapses onto the vacuum amplitude.
  CHECK(average_fidelity({1e-9, 48}, p, 0.6, 0.0) ==
        doctest::Approx(fidelity_at(GaussianInput{}, p, 0.6)).epsilon(1e-8));
}

TEST_CASE("average fidelity options and quadrature failures") {
  CHECK_THROWS_AS(AverageFidelitySpec({0.0, 48}).validate(), DomainError);
  CHECK_THROWS_AS(AverageFidelitySpec({1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(AverageFidelitySpec({1.0, 101}).validate(), DomainError);
  // An oscillating integrand the rule cannot resolve at low order.
  const auto wiggle = [](double x, double y) { return 1.0 + std::cos(6.0 * x) * std::cos(6.0 * y); };
  CHECK_THROWS_AS(regularized_average(wiggle, 4.0, 0.0, 0.0, 10), QuadratureError);
  CHECK(regularized_average(wiggle, 4.0, 0.0, 0.0, 100) ==
        doctest::Approx(1.0 + std::exp(-72.0)).epsilon(1e-8));
}

TEST_CASE("averaged optimum sits at |T2/T1| for near-infinite squeezing") {
  const ChannelParams p = arms(1, 0.5, 20);
  for (double n : {1.0, 10.0, 100.0}) {
    CHECK(optimize_lambda_average({n, 48}, p, 0.0).gain == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("averaged optimum moves toward |T2/T1| with more squeezing") {
  const std::vector<double> n{1.0, 10.0, 100.0};
  const auto z3 = optimal_lambda_vs_ncoh(arms(1, 0.5, 3.0), 0.0, n);
  const auto z4 = optimal_lambda_vs_ncoh(arms(1, 0.5, 4.0), 0.0, n);
  REQUIRE(z3.size() == 3);
  for (std::size_t i = 0; i < n.size(); ++i) {
    CHECK(std::abs(z4[i].gain - 0.5) < std::abs(z3[i].gain - 0.5));
  }
  CHECK(z3[1].gain == doctest::Approx(0.5426).epsilon(1e-3));
  CHECK(z4[2].gain == doctest::Approx(0.5588).epsilon(1e-3));
  CHECK(z3[0].gain == optimize_lambda_average({1.0, 48}, arms(1, 0.5, 3.0), 0.0).gain);
}

TEST_CASE("small cutoff reproduces the single-state optimum") {
  const ChannelParams p = arms(1, 0.5, 3.0);
  const double avg = optimize_lambda_average({1e-9, 48}, p, 0.0).gain;
  const double single = optimize_lambda(GaussianInput{}, p).gain;
  CHECK(avg == doctest::Approx(single).epsilon(1e-5));
}

TEST_CASE("source placement") {
  CHECK(optimize_source_position(FockInput{1}, 0.0, 1.0, 20).l1 == 0.0);
  CHECK(optimize_source_position(FockInput{1}, 0.0, 1.0, 20).fidelity == doctest::Approx(1.0));
  const std::vector<InputState> family{GaussianInput{0.78, {0.5, 0}}, GaussianInput{1.44, {1.0, 0}},
                                       GaussianInput{1.63, {2.0, 0}}, FockInput{1}, FockInput{5},
                                       FockInput{10}};
  for (const InputState& in : family) {
    double previous = 0.0;
    for (double l12 : {0.05, 0.1, 0.2, 0.4}) {
      const SourceOptimum s = optimize_source_position(in, l12, 1.0, 20);
      CHECK(s.l1 >= 0.0);
      CHECK(s.l1 < 0.5 * l12);
      CHECK(s.l1 / l12 >= previous);
      previous = s.l1 / l12;
      CHECK(s.fidelity >= source_fidelity(in, 0.0, l12, 1.0, 20));
      CHECK(s.fidelity >= source_fidelity(in, 0.5 * l12, l12, 1.0, 20));
    }
  }
  const SourceOptimum s = optimize_source_position(GaussianInput{1.44, {1.0, 0}}, 0.1, 1.0, 20);
  CHECK(s.l1 / 0.1 == doctest::Approx(0.204).epsilon(3e-3));
  CHECK_THROWS_AS(optimize_source_position(FockInput{1}, -1.0, 1.0, 20), DomainError);
}

TEST_CASE("classical levels") {
  CHECK(classical_level(GaussianInput{0.0, {1.0, 0.5}}, arms(1, 1, 3), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(classical_level(FockInput{1}, arms(1, 1, 3), 1.0) == doctest::Approx(0.25).epsilon(1e-12));
  const ChannelParams far = from_lengths(0.0, 10.0, 1.0, 1.0, 0.0);
  CHECK(classical_level(FockInput{0}, far, std::abs(far.t2)) > 0.99);
}

TEST_CASE("long-distance ordering of the infinite-squeezing fidelity") {
  for (double l2 : {0.05, 0.2, 0.5, 1.0}) {
    CHECK(at_bob_distance(GaussianInput{0.88, {}}, l2, 20) > at_bob_distance(GaussianInput{1.54, {}}, l2, 20));
    CHECK(at_bob_distance(GaussianInput{1.54, {}}, l2, 20) > at_bob_distance(GaussianInput{1.87, {}}, l2, 20));
    CHECK(at_bob_distance(FockInput{1}, l2, 20) > at_bob_distance(FockInput{5}, l2, 20));
    CHECK(at_bob_distance(FockInput{5}, l2, 20) > at_bob_distance(FockInput{10}, l2, 20));
  }
  double previous = 1.0 + 1e-12;
  for (double l2 = 0.0; l2 <= 1.0; l2 += 0.05) {
    const double f = at_bob_distance(FockInput{5}, l2, 20);
    CHECK(f < previous);
    previous = f;
  }
}

TEST_CASE("number-state average approaches the classical average far away") {
  double quantum = 0.0, classical = 0.0;
  for (int n = 0; n <= 3; ++n) {
    quantum += at_bob_distance(FockInput{n}, 3.0, 20) / 4;
    classical += at_bob_distance(FockInput{n}, 3.0, 0) / 4;
  }
  CHECK(std::abs(quantum - classical) < 0.01);
}

TEST_CASE("distance estimates") {
  CHECK(feature_scale(GaussianInput{-1.5, {}}) == doctest::Approx(std::exp(-1.5)));
  CHECK(feature_scale(FockInput{16}) == doctest::Approx(0.25));
  CHECK(feature_scale(FockInput{0}) == 1.0);

  const NoiseBudget zero = max_distance(GaussianInput{}, 0.1);
  CHECK(zero.max_length == doctest::Approx(-0.5 * std::log(0.8)));
  CHECK(zero.separation == doctest::Approx(2 * zero.max_length));
  CHECK(zero.sigma_infinity == doctest::Approx(0.1));
  CHECK(max_distance(GaussianInput{}, 0.1, 2.5).max_length == doctest::Approx(2.5 * zero.max_length));

  // The bound can exceed the largest possible smearing 1/2.
  CHECK(max_distance(FockInput{0}, 0.6).max_length == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(max_distance(FockInput{1}, 0.0), DomainError);
  CHECK_THROWS_AS(max_distance(FockInput{1}, 1.0), DomainError);

  for (double m : {0.05, 0.1, 0.2}) {
    const double sq = max_distance(GaussianInput{2.0, {}}, m).max_length /
                      max_distance(GaussianInput{1.5, {}}, m).max_length;
    CHECK(sq == doctest::Approx(std::exp(-1.0)).epsilon(0.1));
    const double fock = max_distance(FockInput{16}, m).max_length / max_distance(FockInput{8}, m).max_length;
    CHECK(fock == doctest::Approx(0.5).epsilon(0.1));
  }
}
