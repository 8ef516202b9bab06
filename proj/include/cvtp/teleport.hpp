#pragma once

// Averaged teleported states and their fidelities with the input.

#include <complex>
#include <optional>

#include "cvtp/channel.hpp"
#include "cvtp/gaussian.hpp"
#include "cvtp/oracle.hpp"
#include "cvtp/state.hpp"

namespace cvtp {

struct TeleportSetting {
  double gain = 1.0;   ///< displacement gain lambda
  double phase = 0.0;  ///< displacement phase; closed forms require the normalized frame (0)
  double sigma = 0.5;  ///< smearing variance at this gain
  /// Smearing variance of the same arms without entanglement. Defaults to the
  /// vacuum-reservoir value (1 + gain^2) / (4 gain^2).
  std::optional<double> classical_sigma;

  void validate() const;
  double classical_noise() const;
};

/// Setting for `gain` on channel `p`, with the phase normalized away.
TeleportSetting make_setting(const ChannelParams& p, double gain);

struct FidelityReport {
  double fidelity = 0.0;
  double classical_level = 0.0;
  bool exceeded_classical = false;
};

/// Output Wigner function for a squeezed coherent input.
GaussianWignerd output_state_gaussian(const GaussianInput& in, const TeleportSetting& s);

/// Output Wigner function for a number-state input.
class FockOutput {
 public:
  FockOutput(int photons, double sigma, double gain, double phase = 0.0);
  double operator()(std::complex<double> point) const;

 private:
  int photons_;
  double sigma_;
  double gain_;
  double phase_;
};

FockOutput output_state_fock(const FockInput& in, const TeleportSetting& s);

/// Fidelity of a squeezed vacuum for smearing `sigma` and gain `gain`.
double squeezed_vacuum_fidelity(double squeezing, double sigma, double gain);

/// Decay rates k of the fidelity in the coherent amplitude,
/// F = F_vac exp(-k_re (Re a)^2 - k_im (Im a)^2). Both vanish at gain 1.
struct AmplitudeRates {
  double real;
  double imag;
};
AmplitudeRates squeezed_amplitude_rates(double squeezing, double sigma, double gain);

double squeezed_fidelity(const GaussianInput& in, double sigma, double gain);

/// Number-state fidelity. Finite on the line gain^2 (4 sigma - 1) = 1.
double fock_fidelity(int photons, double sigma, double gain);

/// Number-state fidelity by direct Legendre evaluation; singular on that line.
double fock_fidelity_legendre(int photons, double sigma, double gain);

double closed_form_fidelity(const InputState& in, double sigma, double gain);

FidelityReport fidelity_squeezed(const GaussianInput& in, const TeleportSetting& s);
FidelityReport fidelity_fock(const FockInput& in, const TeleportSetting& s);
FidelityReport fidelity(const InputState& in, const TeleportSetting& s);

/// Fidelity by rasterizing, convolving and overlapping on a phase-space grid.
FidelityReport fidelity_numeric(const InputState& in, const TeleportSetting& s,
                                const GridOptions& options = {});

}  // namespace cvtp
