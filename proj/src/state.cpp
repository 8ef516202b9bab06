#include "cvtp/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvtp/errors.hpp"
#include "cvtp/special.hpp"

namespace cvtp {

void validate(const FockInput& in) {
  if (in.photons < 0 || in.photons > kMaxPhotons) {
    throw DomainError("Fock input: photon number must lie in [0, " +
                      std::to_string(kMaxPhotons) + "]");
  }
}

GaussianWignerd input_wigner(const GaussianInput& in) {
  if (!std::isfinite(in.squeezing)) throw DomainError("Gaussian input: squeezing must be finite");
  const double ch = std::cosh(2.0 * in.squeezing);
  const double sh = std::sinh(2.0 * in.squeezing);
  const std::complex<double> a = in.amplitude;
  return make_gaussian<double>(2.0 * ch, sh, 2.0 * (a * ch + std::conj(a) * sh));
}

double fock_wigner(int photons, std::complex<double> point) {
  validate(FockInput{photons});
  const double r2 = std::norm(point);
  const double sign = photons % 2 == 0 ? 1.0 : -1.0;
  return sign * 2.0 / std::numbers::pi * std::exp(-2.0 * r2) * laguerre(photons, 4.0 * r2);
}

double input_wigner_value(const InputState& in, std::complex<double> point) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) return evaluate(input_wigner(*g), point);
  return fock_wigner(std::get<FockInput>(in).photons, point);
}

double mean_photons(const InputState& in) {
  if (const auto* g = std::get_if<GaussianInput>(&in)) {
    const double s = std::sinh(g->squeezing);
    return std::norm(g->amplitude) + s * s;
  }
  return std::get<FockInput>(in).photons;
}

}  // namespace cvtp
