#include "cvtp/limits_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvtp/errors.hpp"
#include "cvtp/optimize.hpp"
#include "cvtp/parallel.hpp"
#include "cvtp/teleport.hpp"

namespace cvtp {

namespace {

std::vector<double> gain_seeds(const ChannelParams& p) {
  std::vector<double> seeds{lambda_star(p).gain};
  const EntangledState e = shared_state(p);
  if (std::abs(e.correlation) > 0.0) seeds.push_back(e.arm2 / std::abs(e.correlation));
  return seeds;
}

}  // namespace

double fidelity_at(const InputState& in, const ChannelParams& p, double gain) {
  return closed_form_fidelity(in, sigma(p, gain), gain);
}

GainRange gain_range(const ChannelParams& p) {
  return {1e-4, std::max(2.0, 4.0 * lambda_star(p).gain)};
}

LambdaOptimum optimize_lambda(const InputState& in, const ChannelParams& p) {
  p.validate();
  const GainRange r = gain_range(p);
  MaximizeOptions opt;
  opt.seeds = gain_seeds(p);
  const ScalarMaximum m = maximize([&](double g) { return fidelity_at(in, p, g); }, r.lo, r.hi, opt);
  return {m.x, m.value};
}

void AverageFidelitySpec::validate() const {
  if (!(n_coh > 0.0) || !std::isfinite(n_coh)) {
    throw DomainError("average fidelity: n_coh must be positive");
  }
  if (order < 2 || order > 100) throw DomainError("average fidelity: order must be in [2, 100]");
}

double regularized_average(const std::function<double(double, double)>& f, double n_coh,
                           double decay_re, double decay_im, int order, double rel_tol) {
  if (!(n_coh > 0.0) || !std::isfinite(n_coh)) throw DomainError("regularized_average: n_coh must be positive");
  if (!(decay_re >= 0.0) || !(decay_im >= 0.0)) {
    throw DomainError("regularized_average: decay rates must be nonnegative");
  }
  const auto estimate = [&](int m) {
    const GaussHermiteRule rule = gauss_hermite(m);
    // Per axis x = s t with s^2 = n / (1 + n k); the regularizer times exp(-k x^2) becomes
    // the Hermite weight, and exp(k x^2) = exp(t^2 n k / (1 + n k)) is restored on f.
    const double q_re = n_coh * decay_re / (1.0 + n_coh * decay_re);
    const double q_im = n_coh * decay_im / (1.0 + n_coh * decay_im);
    const double s_re = std::sqrt(n_coh / (1.0 + n_coh * decay_re));
    const double s_im = std::sqrt(n_coh / (1.0 + n_coh * decay_im));
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double ti = rule.nodes(i);
      const double wi = rule.weights(i) * std::exp(q_re * ti * ti);
      for (int j = 0; j < m; ++j) {
        const double tj = rule.nodes(j);
        sum += wi * rule.weights(j) * std::exp(q_im * tj * tj) * f(s_re * ti, s_im * tj);
      }
    }
    return sum / (std::numbers::pi *
                  std::sqrt((1.0 + n_coh * decay_re) * (1.0 + n_coh * decay_im)));
  };
  const double fine = estimate(order);
  const double coarse = estimate(std::max(1, order - 8));
  if (!std::isfinite(fine) || std::abs(fine - coarse) > rel_tol * std::abs(fine)) {
    throw QuadratureError("regularized average did not converge at order " + std::to_string(order));
  }
  return fine;
}

double average_fidelity(const AverageFidelitySpec& spec, const ChannelParams& p, double gain,
                        double zeta0) {
  spec.validate();
  const double s = sigma(p, gain);
  const AmplitudeRates k = squeezed_amplitude_rates(zeta0, s, gain);
  return regularized_average(
      [&](double re, double im) { return squeezed_fidelity(GaussianInput{zeta0, {re, im}}, s, gain); },
      spec.n_coh, k.real, k.imag, spec.order);
}

double average_fidelity_exact(const AverageFidelitySpec& spec, const ChannelParams& p, double gain,
                              double zeta0) {
  spec.validate();
  const double s = sigma(p, gain);
  const AmplitudeRates k = squeezed_amplitude_rates(zeta0, s, gain);
  return squeezed_vacuum_fidelity(zeta0, s, gain) /
         std::sqrt((1.0 + spec.n_coh * k.real) * (1.0 + spec.n_coh * k.imag));
}

LambdaOptimum optimize_lambda_average(const AverageFidelitySpec& spec, const ChannelParams& p,
                                      double zeta0) {
  spec.validate();
  p.validate();
  const GainRange r = gain_range(p);
  MaximizeOptions opt;
  opt.seeds = gain_seeds(p);
  const ScalarMaximum m = maximize(
      [&](double g) { return average_fidelity(spec, p, g, zeta0); }, r.lo, r.hi, opt);
  return {m.x, m.value};
}

std::vector<LambdaOptimum> optimal_lambda_vs_ncoh(const ChannelParams& p, double zeta0,
                                                  const std::vector<double>& n_coh, int order) {
  std::vector<LambdaOptimum> out(n_coh.size());
  parallel_for(n_coh.size(), [&](std::size_t i) {
    out[i] = optimize_lambda_average(AverageFidelitySpec{n_coh[i], order}, p, zeta0);
  });
  return out;
}

double source_fidelity(const InputState& in, double l1, double l12, double absorption,
                       double squeezing) {
  const double l2 = l12 - l1;
  const ChannelParams p = from_lengths(l1, l2, absorption, absorption, squeezing);
  return fidelity_at(in, p, std::exp((l1 - l2) / absorption));
}

SourceOptimum optimize_source_position(const InputState& in, double l12, double absorption,
                                       double squeezing) {
  if (!(l12 >= 0.0) || !std::isfinite(l12)) throw DomainError("source position: l12 must be >= 0");
  if (!(absorption > 0.0)) throw DomainError("source position: absorption length must be positive");
  if (l12 == 0.0) return {0.0, source_fidelity(in, 0.0, 0.0, absorption, squeezing)};
  MaximizeOptions opt;
  opt.tol = 1e-9 * std::max(1.0, l12);
  const ScalarMaximum m = maximize(
      [&](double l1) { return source_fidelity(in, l1, l12, absorption, squeezing); }, 0.0, l12,
      opt);
  return {m.x, m.value};
}

double classical_level(const InputState& in, const ChannelParams& p, double gain) {
  ChannelParams classical = p;
  classical.squeezing = 0.0;
  return fidelity_at(in, classical, gain);
}

double feature_scale(const InputState& in) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) return std::exp(-std::abs(g->squeezing));
  const FockInput& f = std::get<FockInput>(in);
  validate(f);
  return 1.0 / std::sqrt(std::max(f.photons, 1));
}

NoiseBudget max_distance(const InputState& in, double margin, double absorption) {
  if (!(margin > 0.0 && margin < 1.0)) throw DomainError("max_distance: margin must lie in (0, 1)");
  if (!(absorption > 0.0)) throw DomainError("max_distance: absorption length must be positive");
  NoiseBudget b;
  b.feature = feature_scale(in);
  // Symmetric arms: sigma_infinity = (1 - |T|^2) / 2 with |T|^2 = exp(-2 l / lA).
  const double target = margin * b.feature * b.feature;
  b.sigma_infinity = target;
  b.sigma = target;
  if (2.0 * target >= 1.0) {
    b.sigma_infinity = b.sigma = 0.5;
    b.max_length = std::numeric_limits<double>::infinity();
  } else {
    b.max_length = -0.5 * absorption * std::log1p(-2.0 * target);
  }
  b.separation = 2.0 * b.max_length;
  return b;
}

}  // namespace cvtp
