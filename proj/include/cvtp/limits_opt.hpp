#pragma once

// Gain and source-position optimization, coherent-amplitude averaged fidelity, classical
// levels and the distance estimates that follow from the smearing noise.

#include <functional>
#include <vector>

#include "cvtp/channel.hpp"
#include "cvtp/state.hpp"

namespace cvtp {

/// Closed-form fidelity for `in` at gain `gain` on channel `p`, in the normalized frame.
double fidelity_at(const InputState& in, const ChannelParams& p, double gain);

struct LambdaOptimum {
  double gain = 0.0;
  double fidelity = 0.0;
};

/// Search interval for the gain: [1e-4, max(2, 4|T2/T1|)].
struct GainRange {
  double lo;
  double hi;
};
GainRange gain_range(const ChannelParams& p);

/// Maximizes the fidelity over the gain; seeds include |T2/T1| and C2/|S|.
LambdaOptimum optimize_lambda(const InputState& in, const ChannelParams& p);

/// Gaussian regularizer of the coherent amplitude, exp(-|a|^2 / n_coh) / (pi n_coh).
struct AverageFidelitySpec {
  double n_coh = 1.0;
  int order = 48;  ///< Gauss-Hermite nodes per axis, at most 100

  void validate() const;
};

/// (pi n_coh)^-1 \int exp(-|a|^2 / n_coh) f(Re a, Im a) d^2a by tensor Gauss-Hermite. The
/// integrand's own Gaussian decay exp(-k_re x^2 - k_im y^2), if known, is absorbed into the
/// node scaling. Throws QuadratureError unless orders `order` and `order - 8` agree to
/// `rel_tol`.
double regularized_average(const std::function<double(double, double)>& f, double n_coh,
                           double decay_re, double decay_im, int order, double rel_tol = 1e-8);

/// Regularized average over coherent amplitudes of squeezed states with squeezing `zeta0`,
/// by tensor Gauss-Hermite quadrature. Throws QuadratureError when two orders disagree
/// beyond 1e-8 relative.
double average_fidelity(const AverageFidelitySpec& spec, const ChannelParams& p, double gain,
                        double zeta0);

/// The same average integrated analytically.
double average_fidelity_exact(const AverageFidelitySpec& spec, const ChannelParams& p, double gain,
                              double zeta0);

LambdaOptimum optimize_lambda_average(const AverageFidelitySpec& spec, const ChannelParams& p,
                                      double zeta0);

/// Optimal gain for each cutoff in `n_coh`, in input order.
std::vector<LambdaOptimum> optimal_lambda_vs_ncoh(const ChannelParams& p, double zeta0,
                                                  const std::vector<double>& n_coh, int order = 48);

struct SourceOptimum {
  double l1 = 0.0;  ///< source distance from Alice
  double fidelity = 0.0;
};

/// Source between Alice and Bob at distance l1 from Alice, with gain exp((l1 - l2)/lA).
double source_fidelity(const InputState& in, double l1, double l12, double absorption,
                       double squeezing);

SourceOptimum optimize_source_position(const InputState& in, double l12, double absorption,
                                       double squeezing);

/// Fidelity without entanglement on the arms of `p` at gain `gain`.
double classical_level(const InputState& in, const ChannelParams& p, double gain);

/// Smallest phase-space feature of the input: exp(-|zeta0|) or 1/sqrt(N).
double feature_scale(const InputState& in);

struct NoiseBudget {
  double sigma = 0.0;          ///< smearing at the distance limit
  double sigma_infinity = 0.0;
  double feature = 1.0;        ///< delta_W
  double max_length = 0.0;     ///< l_T, arm length with symmetric arms
  double separation = 0.0;     ///< Alice-Bob distance, 2 l_T
};

/// Arm length at which sigma_infinity reaches margin * delta_W^2 for symmetric arms.
/// Infinite if the bound is never reached. Throws DomainError unless 0 < margin < 1.
NoiseBudget max_distance(const InputState& in, double margin = 0.1, double absorption = 1.0);

}  // namespace cvtp
