#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "ecs/measure.hpp"

namespace ecs::detail {

// <GHZ|GHZ> for unit c1 and c2 = +-1: 2 +- 2 exp(-6|alpha|^2).
inline double ghz_norm_sq(double alpha_sq, GhzSign sign) {
  return sign == GhzSign::Plus ? 2.0 + 2.0 * std::exp(-6.0 * alpha_sq) : -2.0 * std::expm1(-6.0 * alpha_sq);
}

// (pi^3/8) W(beta_1, beta_2, beta_3), i.e. the displaced-parity correlation.
// The cross terms keep exp(-6|alpha|^2) inside the exponent: near the origin it
// cancels against +6|alpha|^2 from the (beta - alpha)(beta + alpha)^* factors.
inline double ghz_parity_correlation(const std::array<cplx, 3>& beta, cplx alpha, GhzSign sign) {
  double d_minus = 0.0;
  double d_plus = 0.0;
  cplx x{0.0, 0.0};
  for (auto b : beta) {
    d_minus += std::norm(b - alpha);
    d_plus += std::norm(b + alpha);
    x += (b - alpha) * std::conj(b + alpha);
  }
  const double a2 = std::norm(alpha);
  const cplx cross = std::exp(-6.0 * a2 - 2.0 * x) + std::exp(-6.0 * a2 - 2.0 * std::conj(x));
  const double bracket = std::exp(-2.0 * d_minus) + std::exp(-2.0 * d_plus) + sign_value(sign) * cross.real();
  return bracket / ghz_norm_sq(a2, sign);
}

}  // namespace ecs::detail
