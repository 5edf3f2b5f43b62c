#pragma once

#include <array>
#include <functional>
#include <span>

#include "ecs/measure.hpp"
#include "ecs/states.hpp"

namespace ecs {

/// Classical (local hidden variable) bound of the three-party Mermin combination.
inline constexpr double kMerminClassicalBound = 2.0;
/// Quantum maximum of the same combination.
inline constexpr double kMerminQuantumBound = 4.0;

/// Displacement settings (beta_1, beta_2, beta_3) and (beta'_1, beta'_2, beta'_3).
///
/// As a flat parameter vector the order is
///   Re b1, Im b1, Re b2, Im b2, Re b3, Im b3, Re b'1, Im b'1, Re b'2, Im b'2, Re b'3, Im b'3.
struct BellSettings {
  std::array<cplx, 3> unprimed{};
  std::array<cplx, 3> primed{};

  static constexpr std::size_t kParams = 12;
  static BellSettings from_params(std::span<const double> p);
  std::array<double, kParams> to_params() const;
};

struct TauBellSettings {
  std::array<int, 3> unprimed{0, 0, 0};
  std::array<int, 3> primed{1, 1, 1};
};

/// |E(s1,s2,s3) - E(s1,s2',s3') - E(s1',s2,s3') - E(s1',s2',s3)| for any
/// per-party setting type.
template <typename Setting, typename Correlator>
double mermin(const std::array<Setting, 3>& s, const std::array<Setting, 3>& p, Correlator&& corr) {
  using A = std::array<Setting, 3>;
  return std::abs(corr(A{s[0], s[1], s[2]}) - corr(A{s[0], p[1], p[2]}) - corr(A{p[0], s[1], p[2]}) -
                  corr(A{p[0], p[1], s[2]}));
}

/// BM_Pi for the normalized GHZ-type state with c1 = +-c2, through the closed-form
/// Wigner function. Minus with |alpha| < kSmallAlpha uses the single-photon limit state.
double bm_parity(cplx alpha, GhzSign sign, const BellSettings& settings);

/// BM_Pi of an arbitrary three-mode state through the term-algebra expectation.
double bm_parity_state(const HybridState& s, const BellSettings& settings);

/// <A A A> of c1|a,a,a> + c2|-a,-a,-a> (coefficients normalized internally) from J, K, L.
double threshold_correlation_ghz(cplx alpha, cplx c1, cplx c2, const std::array<cplx, 3>& betas);

/// BM_A for the GHZ-type state c1|a,a,a> + c2|-a,-a,-a>.
double bm_threshold(cplx alpha, cplx c1, cplx c2, const BellSettings& settings);

/// BM_A of an arbitrary three-mode state through the term-algebra expectation.
double bm_threshold_state(const HybridState& s, const BellSettings& settings);

/// BM with the logical observable A(tau) on w_logical(alpha).
double bm_w_generic(double alpha, const TauBellSettings& settings);

/// <A(0)A(0)A(0)> on w_logical(alpha), closed form (4 - e^{a^2}) / (2 + e^{a^2}).
double v_closed(double alpha);
/// <A(0)A(1)A(1)> on w_logical(alpha), closed form.
double w_closed(double alpha);
/// |V - 3W| = |(6 - 2e^{-2a^2} - 7e^{-a^2} - 3e^{a^2}) / (2 + e^{a^2})|.
double bm_w_closed(double alpha);

/// Bisection for f(alpha) = 2 on [lo, hi]; the bracket must straddle 2.
double find_violation_onset(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace ecs
