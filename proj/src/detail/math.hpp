#pragma once

#include <cmath>
#include <complex>

namespace ecs::detail {

using cplx = std::complex<double>;

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

// log <a|b> for coherent kets; written as -|a-b|^2/2 + i Im(a* b) so that
// equal amplitudes give exactly 0.
inline cplx coherent_overlap_exponent(cplx a, cplx b) {
  return {-0.5 * std::norm(a - b), std::imag(std::conj(a) * b)};
}

inline cplx coherent_overlap(cplx a, cplx b) { return std::exp(coherent_overlap_exponent(a, b)); }

// <n|a>
inline cplx fock_coherent_overlap(int n, cplx a) {
  return std::exp(-0.5 * std::norm(a)) * ipow(a, n) / std::sqrt(factorial(n));
}

// D(beta)|g> = exp((beta g* - beta* g)/2) |g + beta>; this returns the phase exponent.
inline cplx displacement_phase_exponent(cplx beta, cplx g) {
  return 0.5 * (beta * std::conj(g) - std::conj(beta) * g);
}

// <m|D(beta)|n> via associated Laguerre polynomials.
inline cplx fock_displacement_element(int m, int n, cplx beta) {
  const double x = std::norm(beta);
  const double damp = std::exp(-0.5 * x);
  if (m >= n) {
    return std::sqrt(factorial(n) / factorial(m)) * ipow(beta, m - n) * damp *
           std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(m - n), x);
  }
  return std::sqrt(factorial(m) / factorial(n)) * ipow(-std::conj(beta), n - m) * damp *
         std::assoc_laguerre(static_cast<unsigned>(m), static_cast<unsigned>(n - m), x);
}

}  // namespace ecs::detail
