#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

namespace pdha {

using complexd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Deterministic pairwise summation. Used by every quadrature so results are
/// bit-stable regardless of how callers chunk their data.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n <= 32) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

/// exp(z) - 1 with small-|z| care; needed by the piecewise-exact plane-wave
/// integrals where the phase increment per interval can be ~1e-12.
inline complexd expm1c(complexd z) {
  if (std::abs(z) < 1e-5) {
    // z + z^2/2 + z^3/6 + z^4/24, remainder below 1e-26
    return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0))));
  }
  return std::exp(z) - 1.0;
}

}  // namespace pdha
