#pragma once

#include <cmath>

namespace cvtp {

/// Laguerre polynomial L_n(x) by the three-term recurrence.
template <typename Scalar>
Scalar laguerre(int n, Scalar x) {
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = Scalar(1) - x;
  for (int k = 1; k < n; ++k) {
    const Scalar next = ((Scalar(2 * k + 1) - x) * cur - Scalar(k) * prev) / Scalar(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Legendre polynomial P_n(x) by the three-term recurrence.
template <typename Scalar>
Scalar legendre(int n, Scalar x) {
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  Scalar cur = x;
  for (int k = 1; k < n; ++k) {
    const Scalar next = (Scalar(2 * k + 1) * x * cur - Scalar(k) * prev) / Scalar(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Binomial coefficient as a floating-point value; exact up to n = 64 in double.
template <typename Scalar = double>
Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  if (k > n - k) k = n - k;
  Scalar result(1);
  for (int i = 1; i <= k; ++i) {
    result = result * Scalar(n - k + i) / Scalar(i);
  }
  return std::round(result);
}

}  // namespace cvtp
