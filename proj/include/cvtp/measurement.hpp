#pragma once

// Alice's joint homodyne measurement and Bob's conditional states, for Gaussian inputs.
//
// The outcome is the rescaled complex pair g' = sqrt(2) (mu_R - i nu_I); its density is
// normalized with respect to d^2 g'.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "cvtp/channel.hpp"
#include "cvtp/gaussian.hpp"
#include "cvtp/state.hpp"
#include "cvtp/teleport.hpp"

namespace cvtp {

/// A recorded measurement result g'.
using MeasurementOutcome = std::complex<double>;

struct OutcomeDistribution {
  Eigen::Vector2d mean;        ///< over (Re g', Im g')
  Eigen::Matrix2d covariance;

  double density(std::complex<double> outcome) const;
};

OutcomeDistribution outcome_distribution(const GaussianInput& in, const EntangledState& e);

/// Bob's state after Alice records `outcome`, before his displacement.
GaussianWignerd conditional_state(const GaussianInput& in, const EntangledState& e,
                                  std::complex<double> outcome);

/// Bob's state after the displacement e^{i phase} gain g'.
GaussianWignerd displaced_conditional_state(const GaussianInput& in, const EntangledState& e,
                                            const TeleportSetting& s, std::complex<double> outcome);

/// Exact outcome average of the displaced conditional states.
GaussianWignerd averaged_output(const GaussianInput& in, const EntangledState& e,
                                const TeleportSetting& s);

/// Number of independent generator streams; fixed so results do not depend on threads.
inline constexpr std::size_t kMonteCarloStreams = 16;

struct MonteCarloEstimate {
  Eigen::Vector2d mean;         ///< of the averaged output
  Eigen::Matrix2d covariance;   ///< of the averaged output
  double fidelity = 0.0;        ///< sample mean of conditional-state overlaps
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Samples outcomes, displaces the conditional states and averages. The fidelity is taken
/// against the input rotated by the displacement phase. Throws SeedRequired without a seed.
MonteCarloEstimate monte_carlo_output(const GaussianInput& in, const EntangledState& e,
                                      const TeleportSetting& s, std::size_t samples,
                                      std::optional<std::uint64_t> seed);

}  // namespace cvtp
