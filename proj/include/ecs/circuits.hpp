#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecs/measure.hpp"
#include "ecs/states.hpp"

namespace ecs {

/// Normalized c1|alpha> + c2|-alpha>.
HybridState css(cplx alpha, cplx c1, cplx c2);

/// Normalized c1|alpha,...,alpha> + c2|-alpha,...,-alpha> written down directly.
HybridState ghz_reference(cplx alpha, cplx c1, cplx c2, std::size_t modes = 3);

/// (|1,0,..,0> + |0,1,..,0> + ... ) / sqrt(N), the alpha -> 0 limit of the Minus GHZ state.
HybridState single_photon_w(std::size_t modes = 3);

/// GHZ-type state produced by the beam-splitter chain: |sqrt(N) alpha> +- |-sqrt(N) alpha>
/// through N-1 splitters with r_k = 1/sqrt(N-k+1), phi = pi. Minus with
/// |alpha| < kSmallAlpha returns single_photon_w(N).
HybridState generate_ghz(cplx alpha, GhzSign sign, std::size_t n_modes = 3);

/// Normalized a1|a,-a,-a> + a2|-a,a,-a> + a3|-a,-a,a>.
HybridState w_reference(cplx alpha, cplx a1, cplx a2, cplx a3);

/// Normalized |a,0,0> + |0,a,0> + |0,0,a>: the W state re-centred on the logical basis {|0>, |a>}.
HybridState w_logical(cplx alpha);

/// Output amplitude of the heralded W circuit: gamma (e^{i theta} - 1) / 2.
cplx w_effective_alpha(cplx gamma, double theta);

struct WCircuitSpec {
  cplx gamma{1.0, 0.0};
  double theta = 0.5;
  bool apply_final_displacement = false;
};

enum class Detector { A, B, C };

std::string to_string(Detector d);

using SignPattern = std::array<int, 3>;

struct HeraldedOutcome {
  Detector detector;
  double probability;
  /// Field modes 1-3, collapsed and normalized.
  HybridState state;
  bool is_w_type = false;
  SignPattern sign_pattern{0, 0, 0};
};

/// Intermediate states of the W circuit, for inspection and testing.
/// Mode order of the six-mode states: photon modes 1',2',3' then field modes 1,2,3.
struct WCircuitTrace {
  HybridState single_photon;   // after BS1, BS2 (3 modes)
  HybridState field;           // after BS3, BS4 (3 modes)
  HybridState after_kerr;      // 6 modes
  HybridState pre_detection;   // 6 modes, after BS5, BS6
};

WCircuitTrace trace_w_circuit(const WCircuitSpec& spec);

/// Runs the heralded W-state circuit and returns one outcome per detector, in
/// the order A, B, C. Detector A heralds a two-mode ECS; B and C herald W-type states.
std::vector<HeraldedOutcome> run_w_circuit(const WCircuitSpec& spec);

struct WClassification {
  bool is_w_type = false;
  SignPattern sign_pattern{0, 0, 0};
  double fidelity = 0.0;
};

/// Recentres each mode on the midpoint of its two coherent amplitudes and
/// compares with w_reference(alpha, s1, s2, s3) for the four sign patterns
/// that differ beyond a global sign.
WClassification classify_w_outcome(const HybridState& state, cplx alpha, double tol = 1e-9);
WClassification classify_w_outcome(const HeraldedOutcome& o, cplx alpha, double tol = 1e-9);

}  // namespace ecs
