#pragma once

// Two-mode squeezed vacuum distributed to Alice (arm 1) and Bob (arm 2) through lossy
// arms, and the Gaussian smearing it induces on teleported states.

#include <complex>

namespace cvtp {

struct ChannelParams {
  double squeezing = 0.0;  ///< |zeta| of the source
  double phase = 0.0;      ///< squeezing phase (radians)
  std::complex<double> t1{1.0}, t2{1.0};  ///< arm amplitude transmissions
  std::complex<double> r1{0.0}, r2{0.0};  ///< arm reflections
  double nth1 = 0.0, nth2 = 0.0;          ///< thermal occupations of the arm reservoirs

  /// Throws DomainError when the arms are unphysical.
  void validate() const;

  bool thermal() const { return nth1 > 0.0 || nth2 > 0.0; }
};

/// Arms described by length in units of their absorption lengths, |T_i| = exp(-l_i / lA_i).
ChannelParams from_lengths(double l1, double l2, double absorption1, double absorption2,
                           double squeezing, double phase = 0.0, double nth1 = 0.0,
                           double nth2 = 0.0);

/// Mean thermal occupation 1/(exp(x) - 1) for x = hbar omega / (k_B T).
double planck_occupation(double energy_over_kt);

/// Coefficients of the Gaussian two-mode state shared after transmission:
///
///   W(a, b) = 4/(pi^2 n) exp[-2 (c2|a|^2 + c1|b|^2 + S* a b + S a* b*)],
///
/// with a Alice's and b Bob's amplitude.
struct EntangledState {
  std::complex<double> correlation;  ///< S
  double arm1 = 1.0;                 ///< C1
  double arm2 = 1.0;                 ///< C2
  double normalization = 1.0;        ///< script N; C1 C2 - |S|^2 = 1 / normalization
};

EntangledState shared_state(const ChannelParams& p);

/// Value of the transmitted two-mode Wigner function at (alpha, beta).
double tmsv_wigner_value(const ChannelParams& p, std::complex<double> alpha,
                         std::complex<double> beta);

/// Per-quadrature variance of the smearing kernel for displacement gain `gain`.
double sigma(const ChannelParams& p, double gain);

/// Limit of sigma for infinite source squeezing at gain |T2/T1|.
double sigma_infinity(const ChannelParams& p);

struct Displacement {
  double gain;   ///< |T2 / T1|
  double phase;  ///< phi + arg T1 + arg T2
};

/// Bob's recommended displacement. Throws DomainError if T1 = 0.
Displacement lambda_star(const ChannelParams& p);

}  // namespace cvtp
