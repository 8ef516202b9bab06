#include "cvtp/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvtp/errors.hpp"

namespace cvtp {

namespace {

// cosh(2|zeta|) - 1 without cancellation.
double excess(double squeezing) {
  const double s = std::sinh(squeezing);
  return 2.0 * s * s;
}

// Thermal admixture 2 nth (1 - |T|^2 - |R|^2) of one arm.
double thermal_term(double nth, std::complex<double> t, std::complex<double> r) {
  return 2.0 * nth * (1.0 - std::norm(t) - std::norm(r));
}

// Unnormalized arm bracket 1 + |T|^2 (cosh 2|zeta| - 1) + thermal term.
double arm_bracket(double e, double nth, std::complex<double> t, std::complex<double> r) {
  return 1.0 + std::norm(t) * e + thermal_term(nth, t, r);
}

// Product of the arm brackets minus |T1 T2|^2 sinh^2, expanded so that the leading
// cosh^2 terms cancel analytically.
double normalization(const ChannelParams& p, double e) {
  const double t1 = std::norm(p.t1);
  const double t2 = std::norm(p.t2);
  const double h1 = 1.0 + thermal_term(p.nth1, p.t1, p.r1);
  const double h2 = 1.0 + thermal_term(p.nth2, p.t2, p.r2);
  return h1 * h2 + e * (t1 * h2 + t2 * h1 - 2.0 * t1 * t2);
}

}  // namespace

void ChannelParams::validate() const {
  if (!(squeezing >= 0.0) || !std::isfinite(squeezing)) {
    throw DomainError("channel: squeezing must be finite and nonnegative");
  }
  if (!std::isfinite(phase)) throw DomainError("channel: phase must be finite");
  const auto check_arm = [](std::complex<double> t, std::complex<double> r, double nth,
                            const char* name) {
    if (!(std::abs(t) <= 1.0)) {
      throw DomainError(std::string("channel: |") + name + "| must lie in [0, 1]");
    }
    if (!(std::norm(t) + std::norm(r) <= 1.0 + 1e-12)) {
      throw DomainError(std::string("channel: arm ") + name + " violates |T|^2 + |R|^2 <= 1");
    }
    if (!(nth >= 0.0) || !std::isfinite(nth)) {
      throw DomainError(std::string("channel: thermal occupation of arm ") + name +
                        " must be nonnegative");
    }
  };
  check_arm(t1, r1, nth1, "T1");
  check_arm(t2, r2, nth2, "T2");
}

ChannelParams from_lengths(double l1, double l2, double absorption1, double absorption2,
                           double squeezing, double phase, double nth1, double nth2) {
  if (!(l1 >= 0.0) || !(l2 >= 0.0)) throw DomainError("from_lengths: lengths must be nonnegative");
  if (!(absorption1 > 0.0) || !(absorption2 > 0.0)) {
    throw DomainError("from_lengths: absorption lengths must be positive");
  }
  ChannelParams p;
  p.squeezing = squeezing;
  p.phase = phase;
  p.t1 = std::exp(-l1 / absorption1);
  p.t2 = std::exp(-l2 / absorption2);
  p.nth1 = nth1;
  p.nth2 = nth2;
  p.validate();
  return p;
}

double planck_occupation(double energy_over_kt) {
  if (!(energy_over_kt > 0.0)) throw DomainError("planck_occupation: requires hbar omega / kT > 0");
  return 1.0 / std::expm1(energy_over_kt);
}

EntangledState shared_state(const ChannelParams& p) {
  p.validate();
  const double e = excess(p.squeezing);
  const double n = normalization(p, e);
  EntangledState s;
  s.normalization = n;
  s.arm1 = arm_bracket(e, p.nth1, p.t1, p.r1) / n;
  s.arm2 = arm_bracket(e, p.nth2, p.t2, p.r2) / n;
  s.correlation = std::polar(1.0, p.phase) * p.t1 * p.t2 * std::sinh(2.0 * p.squeezing) / n;
  return s;
}

double tmsv_wigner_value(const ChannelParams& p, std::complex<double> alpha,
                         std::complex<double> beta) {
  const EntangledState s = shared_state(p);
  const double quad = s.arm2 * std::norm(alpha) + s.arm1 * std::norm(beta) +
                      2.0 * std::real(std::conj(s.correlation) * alpha * beta);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return 4.0 / (pi2 * s.normalization) * std::exp(-2.0 * quad);
}

double sigma(const ChannelParams& p, double gain) {
  if (!(gain > 0.0)) throw DomainError("sigma: gain must be positive");
  p.validate();
  // Rewrites N/(4 g^2) (C2 + g^2 C1 - 2 g |S|) so that the e^{2|zeta|} growth of the
  // brackets and of sinh cancels analytically: the only term growing with squeezing is
  // proportional to the gain mismatch (|T2| - g |T1|)^2.
  const double e = excess(p.squeezing);
  const double a1 = std::abs(p.t1);
  const double a2 = std::abs(p.t2);
  const double h1 = 1.0 + thermal_term(p.nth1, p.t1, p.r1);
  const double h2 = 1.0 + thermal_term(p.nth2, p.t2, p.r2);
  const double mismatch = a2 - gain * a1;
  const double saturation = -std::expm1(-2.0 * p.squeezing);  // 1 - (cosh - sinh)
  const double bracket =
      mismatch * mismatch * e + h2 + gain * gain * h1 - 2.0 * gain * a1 * a2 * saturation;
  return bracket / (4.0 * gain * gain);
}

double sigma_infinity(const ChannelParams& p) {
  p.validate();
  const double t1 = std::norm(p.t1);
  const double t2 = std::norm(p.t2);
  if (!(t2 > 0.0)) throw DomainError("sigma_infinity: requires T2 != 0");
  return (t1 + t2 - 2.0 * t1 * t2) / (4.0 * t2);
}

Displacement lambda_star(const ChannelParams& p) {
  p.validate();
  if (!(std::abs(p.t1) > 0.0)) throw DomainError("lambda_star: requires T1 != 0");
  return {std::abs(p.t2) / std::abs(p.t1), p.phase + std::arg(p.t1) + std::arg(p.t2)};
}

}  // namespace cvtp
