#pragma once

#include <complex>
#include <variant>

#include "cvtp/gaussian.hpp"

namespace cvtp {

/// Squeezed coherent state with real squeezing parameter and coherent amplitude.
struct GaussianInput {
  double squeezing = 0.0;
  std::complex<double> amplitude{0.0};
};

/// Photon-number state.
struct FockInput {
  int photons = 0;
};

using InputState = std::variant<GaussianInput, FockInput>;

/// Largest photon number accepted; bounds the polynomial degrees evaluated.
inline constexpr int kMaxPhotons = 64;

/// Throws DomainError for a negative or too large photon number.
void validate(const FockInput& in);

GaussianWignerd input_wigner(const GaussianInput& in);

double fock_wigner(int photons, std::complex<double> point);

/// Wigner function of any supported input at `point`.
double input_wigner_value(const InputState& in, std::complex<double> point);

/// Mean photon number of the input.
double mean_photons(const InputState& in);

}  // namespace cvtp
