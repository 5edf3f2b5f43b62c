#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ecs/states.hpp"

namespace ecs {

/// Relative sign of the two GHZ components: Plus <=> c1 = +c2, Minus <=> c1 = -c2.
enum class GhzSign { Plus, Minus };

inline double sign_value(GhzSign s) { return s == GhzSign::Plus ? 1.0 : -1.0; }

/// Below this amplitude the Minus GHZ state is replaced by its single-photon limit.
inline constexpr double kSmallAlpha = 1e-8;

/// <Pi(b_1) ... Pi(b_N)> with Pi(b) = D(b) P D^dag(b) and P the photon-number parity.
/// One displacement per mode; Fock factors are allowed.
double expect_displaced_parity(const HybridState& s, std::span<const cplx> betas);

/// <A(b_1) ... A(b_N)> with A(b) = D^dag(b) (2|0><0| - I) D(b).
double expect_displaced_threshold(const HybridState& s, std::span<const cplx> betas);

/// Closed-form characteristic function Tr[rho D(eta_1) D(eta_2) D(eta_3)] of the
/// normalized three-mode GHZ-type state. For Minus and |alpha| < kSmallAlpha the
/// single-photon limit exp(-sum|eta|^2/2) (3 - |eta_1+eta_2+eta_3|^2) / 3 is returned.
cplx characteristic_ghz(const std::array<cplx, 3>& eta, cplx alpha, GhzSign sign);

/// Closed-form three-mode Wigner function of the GHZ-type state.
/// Throws SingularNormalizationError for Minus with |alpha| < kSmallAlpha.
double wigner_ghz(const std::array<cplx, 3>& beta, cplx alpha, GhzSign sign);

/// Single-mode threshold matrix elements <a|A(b)|a>, <-a|A(b)|-a>, <a|A(b)|-a>.
struct ThresholdElements {
  double j;
  double k;
  cplx l;
};
ThresholdElements jkl(cplx alpha, cplx beta);

/// Logical-qubit observable: apply U(tau_m) per mode (identity or U_X with
/// logical-one amplitude alpha), then take <(2|0><0| - I)^{(x)N}>.
double expect_a_tau(const HybridState& s, std::span<const int> taus, cplx alpha);

enum class Click { NoClick, Click };

struct DetectionBranch {
  Click outcome;
  double probability;
  /// Collapsed, renormalized state of the remaining modes; empty when the
  /// branch has zero probability or no modes remain.
  std::optional<HybridState> state;
};

/// Threshold (click / no-click) detection of a Fock mode. Returns {NoClick, Click}.
std::array<DetectionBranch, 2> threshold_detect(const HybridState& s, std::size_t mode);

/// Drop `mode`, which must be Fock with the same photon number in every term.
HybridState trace_out_definite(const HybridState& s, std::size_t mode);

}  // namespace ecs
