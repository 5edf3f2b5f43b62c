#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ecs/states.hpp"

namespace ecs {

/// Beam splitter exp{(theta/2)(e^{i phi} a^dag b - e^{-i phi} b^dag a)} on modes (a, b).
///
/// Reflectivity r = sin(theta/2), transmittivity t = cos(theta/2). The induced
/// mode map on coherent amplitudes is
///   (alpha, beta) -> (t alpha + e^{i phi} r beta,  -e^{-i phi} r alpha + t beta),
/// and Fock pairs transform through the same creation-operator substitution.
struct BeamSplitterSpec {
  double theta = 0.0;
  double phi = 0.0;
  std::size_t mode_a = 0;
  std::size_t mode_b = 1;

  static BeamSplitterSpec from_reflectivity(double r, double phi, std::size_t a, std::size_t b);
  double reflectivity() const;
  double transmittivity() const;
};

struct PhaseShiftSpec {
  std::size_t mode = 0;
  double phi = 0.0;
};

struct DisplacementSpec {
  std::size_t mode = 0;
  cplx beta{0.0, 0.0};
};

/// Cross-Kerr coupling chi n_c n_t for time t; theta = chi t.
struct CrossKerrSpec {
  std::size_t control = 0;
  std::size_t target = 1;
  double theta = 0.0;
};

/// U_X = D(alpha/2) U_K(pi/chi) D(-alpha/2) on one mode.
struct KerrXSpec {
  std::size_t mode = 0;
  cplx alpha{0.0, 0.0};
};

using Element = std::variant<BeamSplitterSpec, PhaseShiftSpec, DisplacementSpec, CrossKerrSpec, KerrXSpec>;

HybridState apply_beam_splitter(const HybridState& s, const BeamSplitterSpec& spec);
HybridState apply_phase_shifter(const HybridState& s, std::size_t mode, double phi);
HybridState apply_displacement(const HybridState& s, const DisplacementSpec& spec);
HybridState apply_cross_kerr(const HybridState& s, const CrossKerrSpec& spec);

/// Single-mode Kerr evolution for t = pi/chi, through
/// U_K|a> = e^{-i pi/4} (|a> + i|-a>) / sqrt(2). Bit-identical terms are merged.
HybridState apply_kerr_pi(const HybridState& s, std::size_t mode);
HybridState apply_ux(const HybridState& s, const KerrXSpec& spec);

HybridState apply_element(const HybridState& s, const Element& e);
HybridState apply_circuit(const HybridState& s, const std::vector<Element>& circuit);

/// Circuit files: one element per line,
///   BS theta phi a b | PS mode phi | D mode re im | CK ctrl tgt theta | UX mode re im
/// Blank lines and lines starting with '#' are ignored.
std::vector<Element> parse_circuit(std::istream& is);
std::vector<Element> parse_circuit(const std::string& text);
std::string format_element(const Element& e);

}  // namespace ecs
