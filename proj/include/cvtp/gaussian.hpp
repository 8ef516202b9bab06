#pragma once

// Single-mode Gaussian Wigner functions in the complex-amplitude form
//
//   W(g) = (N/pi) exp(-A|g|^2 - B g*^2 - B* g^2 + C g* + C* g - D),
//
// with the phase-space measure d^2g = d(Re g) d(Im g).

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include <Eigen/Dense>

#include "cvtp/errors.hpp"

namespace cvtp {

template <typename Scalar>
struct GaussianWigner {
  static_assert(std::is_floating_point_v<Scalar>);

  using Real = Scalar;
  using Complex = std::complex<Scalar>;
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

  Scalar isotropic{};    ///< coefficient of |g|^2 (A)
  Complex anisotropic{};  ///< coefficient of g*^2 (B)
  Complex linear{};       ///< coefficient of g* (C)
  Scalar offset{};       ///< constant term (D)
  Scalar prefactor{};    ///< normalization (N)

  /// Real quadratic form M with exponent -v^T M v + 2 c^T v - D, v = (Re g, Im g).
  Matrix2 precision() const {
    Matrix2 m;
    m << isotropic + 2 * anisotropic.real(), 2 * anisotropic.imag(),
        2 * anisotropic.imag(), isotropic - 2 * anisotropic.real();
    return m;
  }

  Vector2 drift() const { return Vector2(linear.real(), linear.imag()); }

  Vector2 mean() const { return precision().inverse() * drift(); }

  /// Covariance of (Re g, Im g); the vacuum has 1/4 on the diagonal.
  Matrix2 covariance() const { return precision().inverse() / Scalar(2); }

  /// pi * integral of W^2; equals one exactly for pure Gaussian states.
  Scalar purity() const { return prefactor / Scalar(2); }

  /// Satisfies the uncertainty relation (purity at most one).
  bool is_physical(Scalar tol = Scalar(1e-12)) const { return purity() <= Scalar(1) + tol; }
};

using GaussianWignerd = GaussianWigner<double>;

/// Normalized Gaussian with the given quadratic and linear coefficients.
template <typename Scalar>
GaussianWigner<Scalar> make_gaussian(Scalar isotropic, std::complex<Scalar> anisotropic,
                                     std::complex<Scalar> linear) {
  const Scalar det = isotropic * isotropic - Scalar(4) * std::norm(anisotropic);
  if (!(isotropic > Scalar(2) * std::abs(anisotropic)) || !(det > Scalar(0))) {
    throw DomainError("make_gaussian: non-normalizable Gaussian (requires A > 2|B|)");
  }
  GaussianWigner<Scalar> g;
  g.isotropic = isotropic;
  g.anisotropic = anisotropic;
  g.linear = linear;
  g.prefactor = std::sqrt(det);
  g.offset = (isotropic * std::norm(linear) -
              Scalar(2) * std::real(std::conj(anisotropic) * linear * linear)) /
             det;
  return g;
}

/// Normalized Gaussian with prescribed mean and covariance of (Re g, Im g).
template <typename Scalar>
GaussianWigner<Scalar> from_moments(const typename GaussianWigner<Scalar>::Vector2& mean,
                                    const typename GaussianWigner<Scalar>::Matrix2& covariance) {
  using Complex = std::complex<Scalar>;
  const typename GaussianWigner<Scalar>::Matrix2 m = covariance.inverse() / Scalar(2);
  const typename GaussianWigner<Scalar>::Vector2 c = m * mean;
  return make_gaussian<Scalar>((m(0, 0) + m(1, 1)) / Scalar(2),
                               Complex((m(0, 0) - m(1, 1)) / Scalar(4), m(0, 1) / Scalar(2)),
                               Complex(c(0), c(1)));
}

template <typename Scalar>
Scalar evaluate(const GaussianWigner<Scalar>& g, std::complex<Scalar> point) {
  const Scalar exponent = -g.isotropic * std::norm(point) -
                          Scalar(2) * std::real(g.anisotropic * std::conj(point) * std::conj(point)) +
                          Scalar(2) * std::real(g.linear * std::conj(point)) - g.offset;
  return g.prefactor / std::numbers::pi_v<Scalar> * std::exp(exponent);
}

/// W'(b) = W(b e^{-i angle}): the Wigner function rotated by `angle` in phase space.
template <typename Scalar>
GaussianWigner<Scalar> rotate(const GaussianWigner<Scalar>& g, Scalar angle) {
  GaussianWigner<Scalar> out = g;
  out.anisotropic = g.anisotropic * std::polar(Scalar(1), Scalar(2) * angle);
  out.linear = g.linear * std::polar(Scalar(1), angle);
  return out;
}

/// Gaussian smearing with variance `noise` per quadrature followed by a rescale of the
/// output coordinate by `gain`:
///
///   W_out(b) = (2 pi noise gain^2)^-1 \int W(g) exp(-|g - b/gain|^2 / (2 noise)) d^2g.
///
/// The closed-form coefficients are multiplied through by (2 noise)^2 so that the map stays
/// accurate as noise -> 0.
template <typename Scalar>
GaussianWigner<Scalar> teleport_map(const GaussianWigner<Scalar>& g, Scalar noise, Scalar gain) {
  if (!(noise > Scalar(0))) throw DomainError("teleport_map: noise variance must be positive");
  if (!(gain > Scalar(0))) throw DomainError("teleport_map: gain must be positive");
  using Complex = std::complex<Scalar>;

  const Scalar widened = Scalar(1) + Scalar(2) * noise * g.isotropic;
  const Scalar den = widened * widened - Scalar(16) * noise * noise * std::norm(g.anisotropic);
  const Scalar gain2 = gain * gain;
  const Complex b = g.anisotropic;
  const Complex c = g.linear;

  GaussianWigner<Scalar> out;
  out.isotropic =
      (g.isotropic + Scalar(2) * noise * g.prefactor * g.prefactor) / (gain2 * den);
  out.anisotropic = b / (gain2 * den);
  out.linear = (widened * c - Scalar(4) * noise * b * std::conj(c)) / (gain * den);
  out.prefactor = g.prefactor / (gain2 * std::sqrt(den));
  out.offset = g.offset - Scalar(2) * noise *
                              (widened * std::norm(c) -
                               Scalar(4) * noise * std::real(std::conj(b) * c * c)) /
                              den;
  return out;
}

/// pi * \int W1 W2 d^2b, the fidelity when one argument is a pure state.
template <typename Scalar>
Scalar gaussian_overlap(const GaussianWigner<Scalar>& g1, const GaussianWigner<Scalar>& g2) {
  const Scalar a = g1.isotropic + g2.isotropic;
  const auto b = g1.anisotropic + g2.anisotropic;
  const auto c = g1.linear + g2.linear;
  const Scalar det = a * a - Scalar(4) * std::norm(b);
  if (!(det > Scalar(0))) throw DomainError("gaussian_overlap: summed Gaussian not normalizable");
  const Scalar exponent =
      (a * std::norm(c) - Scalar(2) * std::real(std::conj(b) * c * c)) / det - g1.offset -
      g2.offset;
  return g1.prefactor * g2.prefactor / std::sqrt(det) * std::exp(exponent);
}

}  // namespace cvtp
