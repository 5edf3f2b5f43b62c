#include "ecs/circuits.hpp"

#include <cmath>
#include <numbers>

#include "ecs/elements.hpp"
#include "ecs/errors.hpp"

namespace ecs {

namespace {

constexpr double kPi = std::numbers::pi;

HybridState coherent_term(std::initializer_list<cplx> amps) {
  return HybridState::coherent_product(std::vector<cplx>(amps));
}

}  // namespace

HybridState css(cplx alpha, cplx c1, cplx c2) {
  const auto plus = coherent_term({alpha});
  const auto minus = coherent_term({-alpha});
  return normalize(superpose(plus, minus, c1, c2));
}

HybridState ghz_reference(cplx alpha, cplx c1, cplx c2, std::size_t modes) {
  if (modes == 0) throw DimensionError("GHZ state needs at least one mode");
  const auto up = HybridState::coherent_product(std::vector<cplx>(modes, alpha));
  const auto down = HybridState::coherent_product(std::vector<cplx>(modes, -alpha));
  return normalize(superpose(up, down, c1, c2));
}

HybridState single_photon_w(std::size_t modes) {
  if (modes == 0) throw DimensionError("W state needs at least one mode");
  std::vector<ProductTerm> terms;
  const double c = 1.0 / std::sqrt(static_cast<double>(modes));
  for (std::size_t k = 0; k < modes; ++k) {
    ProductTerm t{c, std::vector<KetFactor>(modes, KetFactor::fock(0))};
    t.factors[k] = KetFactor::fock(1);
    terms.push_back(std::move(t));
  }
  return HybridState(modes, std::move(terms));
}

HybridState generate_ghz(cplx alpha, GhzSign sign, std::size_t n_modes) {
  if (n_modes < 2) throw std::invalid_argument("GHZ generation needs at least two modes");
  if (sign == GhzSign::Minus && std::abs(alpha) < kSmallAlpha) return single_photon_w(n_modes);
  const double n = static_cast<double>(n_modes);
  auto state = tensor(css(std::sqrt(n) * alpha, 1.0, sign_value(sign)), HybridState::vacuum(n_modes - 1));
  for (std::size_t k = 1; k < n_modes; ++k) {
    const double r = 1.0 / std::sqrt(n - static_cast<double>(k) + 1.0);
    state = apply_beam_splitter(state, BeamSplitterSpec::from_reflectivity(r, kPi, 0, k));
  }
  return state;
}

HybridState w_reference(cplx alpha, cplx a1, cplx a2, cplx a3) {
  const auto t1 = coherent_term({alpha, -alpha, -alpha});
  const auto t2 = coherent_term({-alpha, alpha, -alpha});
  const auto t3 = coherent_term({-alpha, -alpha, alpha});
  return normalize(superpose(superpose(t1, t2, a1, a2), t3, 1.0, a3));
}

HybridState w_logical(cplx alpha) {
  const auto t1 = coherent_term({alpha, 0.0, 0.0});
  const auto t2 = coherent_term({0.0, alpha, 0.0});
  const auto t3 = coherent_term({0.0, 0.0, alpha});
  return normalize(superpose(superpose(t1, t2, 1.0, 1.0), t3, 1.0, 1.0));
}

cplx w_effective_alpha(cplx gamma, double theta) { return 0.5 * gamma * (std::polar(1.0, theta) - 1.0); }

std::string to_string(Detector d) {
  switch (d) {
    case Detector::A: return "A";
    case Detector::B: return "B";
    case Detector::C: return "C";
  }
  return "?";
}

WCircuitTrace trace_w_circuit(const WCircuitSpec& spec) {
  if (spec.theta == 0.0) throw std::invalid_argument("cross-Kerr phase must be nonzero");

  // Photon enters at 3'; BS1 reflects sqrt(2/5) into 1', BS2 reflects sqrt(2/3) of the rest into 2'.
  const std::array<int, 3> one_photon{0, 0, 1};
  auto photon = HybridState::fock_product(one_photon);
  photon = apply_beam_splitter(photon, BeamSplitterSpec::from_reflectivity(std::sqrt(2.0 / 5.0), kPi, 2, 0));
  photon = apply_beam_splitter(photon, BeamSplitterSpec::from_reflectivity(std::sqrt(2.0 / 3.0), kPi, 2, 1));

  auto field = coherent_term({std::sqrt(3.0) * spec.gamma, 0.0, 0.0});
  field = apply_beam_splitter(field, BeamSplitterSpec::from_reflectivity(1.0 / std::sqrt(3.0), kPi, 0, 1));
  field = apply_beam_splitter(field, BeamSplitterSpec::from_reflectivity(1.0 / std::sqrt(2.0), kPi, 0, 2));

  auto joint = tensor(photon, field);
  for (std::size_t k = 0; k < 3; ++k) joint = apply_cross_kerr(joint, {k, k + 3, spec.theta});
  auto after_kerr = joint;

  // BS5 mixes 1' and 2'; BS6 mixes 3' with the symmetric BS5 output, so that
  // port 2' sees the row (1, 1, sqrt 2)/2 of the single-photon network.
  joint = apply_beam_splitter(joint, BeamSplitterSpec::from_reflectivity(1.0 / std::sqrt(2.0), kPi, 0, 1));
  joint = apply_beam_splitter(joint, BeamSplitterSpec::from_reflectivity(1.0 / std::sqrt(2.0), kPi, 2, 1));
  return {std::move(photon), std::move(field), std::move(after_kerr), prune(joint, 0.0)};
}

std::vector<HeraldedOutcome> run_w_circuit(const WCircuitSpec& spec) {
  const auto trace = trace_w_circuit(spec);
  const cplx alpha = w_effective_alpha(spec.gamma, spec.theta);
  const cplx x = -0.5 * (spec.gamma + spec.gamma * std::polar(1.0, spec.theta));

  std::vector<HeraldedOutcome> out;
  for (std::size_t clicked = 0; clicked < 3; ++clicked) {
    // Detectors read modes a', b', c' in turn; each detection removes its mode,
    // so the next photon mode is always at index 0.
    double prob = 1.0;
    std::optional<HybridState> cur = trace.pre_detection;
    for (std::size_t d = 0; d < 3 && cur; ++d) {
      const auto branches = threshold_detect(*cur, 0);
      const auto& b = branches[d == clicked ? 1 : 0];
      prob *= b.probability;
      cur = b.state;
    }
    const auto detector = static_cast<Detector>(clicked);
    if (!cur) {
      out.push_back({detector, 0.0, HybridState::vacuum(3), false, {0, 0, 0}});
      continue;
    }
    HybridState field = *cur;
    if (spec.apply_final_displacement) {
      const std::size_t n_disp = detector == Detector::A ? 2 : 3;
      for (std::size_t m = 0; m < n_disp; ++m) field = apply_displacement(field, {m, x});
    }
    HeraldedOutcome o{detector, prob, field, false, {0, 0, 0}};
    const auto cls = classify_w_outcome(field, alpha);
    o.is_w_type = cls.is_w_type;
    o.sign_pattern = cls.sign_pattern;
    out.push_back(std::move(o));
  }
  return out;
}

WClassification classify_w_outcome(const HybridState& state, cplx alpha, double tol) {
  WClassification none;
  if (state.modes() != 3) return none;
  for (std::size_t m = 0; m < 3; ++m)
    if (!state.mode_is(m, KetFactor::Kind::Coherent)) return none;

  const auto merged = prune(state);
  HybridState centred = merged;
  for (std::size_t m = 0; m < 3; ++m) {
    std::vector<cplx> values;
    for (const auto& t : merged.terms()) {
      const cplx a = t.factors[m].amplitude;
      bool seen = false;
      for (auto v : values) seen = seen || std::abs(v - a) <= 1e-9 * (1.0 + std::abs(a));
      if (!seen) values.push_back(a);
    }
    if (values.size() != 2) return none;
    centred = apply_displacement(centred, {m, -0.5 * (values[0] + values[1])});
  }

  constexpr std::array<SignPattern, 4> patterns{{{1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};
  WClassification best;
  for (const auto& p : patterns) {
    double f = 0.0;
    try {
      f = fidelity(centred, w_reference(alpha, p[0], p[1], p[2]));
    } catch (const DegenerateStateError&) {
      continue;
    }
    if (f > best.fidelity) best = {false, p, f};
  }
  best.is_w_type = best.fidelity >= 1.0 - tol;
  if (!best.is_w_type) best.sign_pattern = {0, 0, 0};
  return best;
}

WClassification classify_w_outcome(const HeraldedOutcome& o, cplx alpha, double tol) {
  if (o.probability <= 0.0) return {};
  return classify_w_outcome(o.state, alpha, tol);
}

}  // namespace ecs
