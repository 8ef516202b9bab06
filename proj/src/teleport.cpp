#include "cvtp/teleport.hpp"

#include <cmath>
#include <numbers>

#include "cvtp/errors.hpp"
#include "cvtp/special.hpp"

namespace cvtp {

namespace {

void require_normalized_frame(const TeleportSetting& s) {
  if (s.phase != 0.0) {
    throw DomainError("closed-form fidelity requires the displacement phase normalized to 0");
  }
}

FidelityReport report(double f, double classical) {
  return {f, classical, f > classical};
}

// (4 sigma - 1)^N L_N(-u / (4 sigma - 1)) for the smeared number state.
double smeared_laguerre(int photons, double sigma, double u) {
  const double d = 4.0 * sigma - 1.0;
  if (std::abs(d) >= 1e-2) return std::pow(d, photons) * laguerre(photons, -u / d);
  // Expanded polynomial: finite through d = 0.
  double sum = 0.0;
  double u_pow = 1.0;
  double factorial = 1.0;
  for (int k = 0; k <= photons; ++k) {
    if (k > 0) {
      u_pow *= u;
      factorial *= k;
    }
    sum += binomial(photons, k) * u_pow / factorial * std::pow(d, photons - k);
  }
  return sum;
}

}  // namespace

void TeleportSetting::validate() const {
  if (!(gain > 0.0) || !std::isfinite(gain)) throw DomainError("teleport: gain must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("teleport: sigma must be positive");
  if (classical_sigma && !(*classical_sigma > 0.0)) {
    throw DomainError("teleport: classical sigma must be positive");
  }
}

double TeleportSetting::classical_noise() const {
  return classical_sigma.value_or((1.0 + gain * gain) / (4.0 * gain * gain));
}

TeleportSetting make_setting(const ChannelParams& p, double gain) {
  ChannelParams classical = p;
  classical.squeezing = 0.0;
  TeleportSetting s;
  s.gain = gain;
  s.sigma = sigma(p, gain);
  s.classical_sigma = sigma(classical, gain);
  return s;
}

GaussianWignerd output_state_gaussian(const GaussianInput& in, const TeleportSetting& s) {
  s.validate();
  const double ch = std::cosh(2.0 * in.squeezing);
  const double sh = std::sinh(2.0 * in.squeezing);
  const double sig = s.sigma;
  const double lam = s.gain;
  const double den = 1.0 + 8.0 * sig * ch + 16.0 * sig * sig;
  const std::complex<double> a = in.amplitude;
  const double isotropic = 2.0 * (ch + 4.0 * sig) / (lam * lam * den);
  const double anisotropic = sh / (lam * lam * den);
  const std::complex<double> linear = 2.0 * (a * (ch + 4.0 * sig) + std::conj(a) * sh) / (lam * den);
  GaussianWignerd out = make_gaussian<double>(isotropic, anisotropic, linear);
  return s.phase == 0.0 ? out : rotate(out, s.phase);
}

FockOutput::FockOutput(int photons, double sigma, double gain, double phase)
    : photons_(photons), sigma_(sigma), gain_(gain), phase_(phase) {
  validate(FockInput{photons});
  if (!(sigma > 0.0)) throw DomainError("FockOutput: sigma must be positive");
  if (!(gain > 0.0)) throw DomainError("FockOutput: gain must be positive");
}

double FockOutput::operator()(std::complex<double> point) const {
  // Rotationally symmetric, so the displacement phase drops out.
  (void)phase_;
  const double lam2 = gain_ * gain_;
  const double widen = 4.0 * sigma_ + 1.0;
  const double u = 4.0 * std::norm(point) / (lam2 * widen);
  return 2.0 / (std::numbers::pi * lam2) * smeared_laguerre(photons_, sigma_, u) /
         std::pow(widen, photons_ + 1) * std::exp(-0.5 * u);
}

FockOutput output_state_fock(const FockInput& in, const TeleportSetting& s) {
  s.validate();
  return FockOutput(in.photons, s.sigma, s.gain, s.phase);
}

double squeezed_vacuum_fidelity(double squeezing, double sigma, double gain) {
  const double l2 = gain * gain;
  const double bracket = 1.0 + 2.0 * l2 + l2 * l2 * (1.0 + 16.0 * sigma * sigma) +
                         8.0 * l2 * (1.0 + l2) * sigma * std::cosh(2.0 * squeezing);
  return 2.0 / std::sqrt(bracket);
}

AmplitudeRates squeezed_amplitude_rates(double squeezing, double sigma, double gain) {
  const double l2 = gain * gain;
  const double e = std::exp(2.0 * squeezing);
  const double mismatch = (1.0 - gain) * (1.0 - gain);
  return {2.0 * mismatch * e / (1.0 + l2 * (1.0 + 4.0 * e * sigma)),
          2.0 * mismatch / ((1.0 + l2) * e + 4.0 * l2 * sigma)};
}

double squeezed_fidelity(const GaussianInput& in, double sigma, double gain) {
  const AmplitudeRates k = squeezed_amplitude_rates(in.squeezing, sigma, gain);
  const double re = in.amplitude.real();
  const double im = in.amplitude.imag();
  return squeezed_vacuum_fidelity(in.squeezing, sigma, gain) *
         std::exp(-k.real * re * re - k.imag * im * im);
}

double fock_fidelity_legendre(int photons, double sigma, double gain) {
  const double l2 = gain * gain;
  const double x = l2 * (4.0 * sigma - 1.0) - 1.0;
  const double y = l2 * (4.0 * sigma + 1.0) + 1.0;
  return 2.0 * std::pow(x, photons) / std::pow(y, photons + 1) *
         legendre(photons, 1.0 + 8.0 * l2 / (x * y));
}

double fock_fidelity(int photons, double sigma, double gain) {
  validate(FockInput{photons});
  const double l2 = gain * gain;
  const double x = l2 * (4.0 * sigma - 1.0) - 1.0;
  const double y = l2 * (4.0 * sigma + 1.0) + 1.0;
  const double h = 4.0 * l2 / y;
  if (x + h < 0.0) {
    // Legendre argument inside (-1, 1): the recurrence is stable and x != 0.
    return fock_fidelity_legendre(photons, sigma, gain);
  }
  // x^N P_N(1 + 2h/x) = sum_j C(N,j)^2 h^j (x + h)^(N-j); all terms nonnegative here.
  const double p = h / y;
  const double q = (x + h) / y;
  double sum = 0.0;
  for (int j = 0; j <= photons; ++j) {
    const double c = binomial(photons, j);
    sum += c * c * std::pow(p, j) * std::pow(q, photons - j);
  }
  return 2.0 / y * sum;
}

double closed_form_fidelity(const InputState& in, double sigma, double gain) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) return squeezed_fidelity(*g, sigma, gain);
  return fock_fidelity(std::get<FockInput>(in).photons, sigma, gain);
}

FidelityReport fidelity_squeezed(const GaussianInput& in, const TeleportSetting& s) {
  s.validate();
  require_normalized_frame(s);
  return report(squeezed_fidelity(in, s.sigma, s.gain),
                squeezed_fidelity(in, s.classical_noise(), s.gain));
}

FidelityReport fidelity_fock(const FockInput& in, const TeleportSetting& s) {
  s.validate();
  require_normalized_frame(s);
  return report(fock_fidelity(in.photons, s.sigma, s.gain),
                fock_fidelity(in.photons, s.classical_noise(), s.gain));
}

FidelityReport fidelity(const InputState& in, const TeleportSetting& s) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) return fidelity_squeezed(*g, s);
  return fidelity_fock(std::get<FockInput>(in), s);
}

FidelityReport fidelity_numeric(const InputState& in, const TeleportSetting& s,
                                const GridOptions& options) {
  s.validate();
  require_normalized_frame(s);
  const GridSpec spec = options.spec ? *options.spec : auto_grid(in, options.n);
  check_resolution(in, spec);
  const GridWigner input = rasterize(in, spec);
  const auto numeric = [&](double noise) {
    return overlap(input, convolve_teleport(input, noise, s.gain));
  };
  return report(numeric(s.sigma), numeric(s.classical_noise()));
}

}  // namespace cvtp
