#include "ecs/elements.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <sstream>

#include "detail/math.hpp"
#include "ecs/errors.hpp"

namespace ecs {

BeamSplitterSpec BeamSplitterSpec::from_reflectivity(double r, double phi, std::size_t a, std::size_t b) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("reflectivity must lie in [0, 1]");
  return {2.0 * std::asin(r), phi, a, b};
}

double BeamSplitterSpec::reflectivity() const { return std::sin(0.5 * theta); }
double BeamSplitterSpec::transmittivity() const { return std::cos(0.5 * theta); }

namespace {

void check_mode(const HybridState& s, std::size_t mode) {
  if (mode >= s.modes())
    throw DimensionError("mode index " + std::to_string(mode) + " out of range for " +
                         std::to_string(s.modes()) + "-mode state");
}

void require_kind(const HybridState& s, std::size_t mode, KetFactor::Kind kind, const char* what) {
  check_mode(s, mode);
  if (!s.mode_is(mode, kind)) {
    const char* k = kind == KetFactor::Kind::Coherent ? "coherent" : "Fock";
    throw UnsupportedKindError(std::string(what) + ": mode " + std::to_string(mode) + " must be " + k +
                               " in every term");
  }
}

double binomial(int n, int k) { return detail::factorial(n) / (detail::factorial(k) * detail::factorial(n - k)); }

}  // namespace

HybridState apply_beam_splitter(const HybridState& s, const BeamSplitterSpec& spec) {
  check_mode(s, spec.mode_a);
  check_mode(s, spec.mode_b);
  if (spec.mode_a == spec.mode_b) throw std::invalid_argument("beam splitter needs two distinct modes");
  const double t = spec.transmittivity();
  const double r = spec.reflectivity();
  const cplx ph = std::polar(1.0, spec.phi);
  // Creation operators: a^dag -> t a^dag + ra b^dag,  b^dag -> rb a^dag + t b^dag.
  const cplx ra = -std::conj(ph) * r;
  const cplx rb = ph * r;

  std::vector<ProductTerm> out;
  out.reserve(s.size());
  for (const auto& term : s.terms()) {
    const auto& fa = term.factors[spec.mode_a];
    const auto& fb = term.factors[spec.mode_b];
    if (fa.kind != fb.kind)
      throw UnsupportedKindError("beam splitter on a mixed Fock/coherent mode pair is not supported");
    if (fa.is_coherent()) {
      ProductTerm p = term;
      p.factors[spec.mode_a] = KetFactor::coherent(t * fa.amplitude + rb * fb.amplitude);
      p.factors[spec.mode_b] = KetFactor::coherent(ra * fa.amplitude + t * fb.amplitude);
      out.push_back(std::move(p));
      continue;
    }
    const int na = fa.photons;
    const int nb = fb.photons;
    const int total = na + nb;
    if (total > kFockCap)
      throw PhotonCapError("beam splitter input carries " + std::to_string(total) + " photons, cap is " +
                           std::to_string(kFockCap));
    std::vector<cplx> amp(static_cast<std::size_t>(total) + 1, cplx{0.0, 0.0});
    for (int i = 0; i <= na; ++i) {
      const cplx ci = binomial(na, i) * std::pow(t, i) * detail::ipow(ra, na - i);
      for (int j = 0; j <= nb; ++j) {
        const cplx cj = binomial(nb, j) * detail::ipow(rb, j) * std::pow(t, nb - j);
        amp[static_cast<std::size_t>(i + j)] += ci * cj;
      }
    }
    const double inv = 1.0 / std::sqrt(detail::factorial(na) * detail::factorial(nb));
    for (int k = 0; k <= total; ++k) {
      const cplx c = amp[static_cast<std::size_t>(k)];
      if (c == cplx{0.0, 0.0}) continue;
      ProductTerm p = term;
      p.coefficient *= c * inv * std::sqrt(detail::factorial(k) * detail::factorial(total - k));
      p.factors[spec.mode_a] = KetFactor::fock(k);
      p.factors[spec.mode_b] = KetFactor::fock(total - k);
      out.push_back(std::move(p));
    }
  }
  return HybridState(s.modes(), std::move(out));
}

HybridState apply_phase_shifter(const HybridState& s, std::size_t mode, double phi) {
  check_mode(s, mode);
  auto terms = s.terms();
  const cplx ph = std::polar(1.0, phi);
  for (auto& t : terms) {
    auto& f = t.factors[mode];
    if (f.is_coherent())
      f.amplitude *= ph;
    else
      t.coefficient *= std::polar(1.0, phi * f.photons);
  }
  return HybridState(s.modes(), std::move(terms));
}

HybridState apply_displacement(const HybridState& s, const DisplacementSpec& spec) {
  require_kind(s, spec.mode, KetFactor::Kind::Coherent, "displacement");
  if (!std::isfinite(spec.beta.real()) || !std::isfinite(spec.beta.imag()))
    throw std::invalid_argument("non-finite displacement");
  auto terms = s.terms();
  for (auto& t : terms) {
    auto& f = t.factors[spec.mode];
    t.coefficient *= std::exp(detail::displacement_phase_exponent(spec.beta, f.amplitude));
    f.amplitude += spec.beta;
  }
  return HybridState(s.modes(), std::move(terms));
}

HybridState apply_cross_kerr(const HybridState& s, const CrossKerrSpec& spec) {
  if (spec.control == spec.target) throw std::invalid_argument("cross-Kerr needs distinct control and target");
  if (!(spec.theta > -std::numbers::pi && spec.theta <= std::numbers::pi))
    throw std::invalid_argument("cross-Kerr phase must lie in (-pi, pi]");
  require_kind(s, spec.control, KetFactor::Kind::Fock, "cross-Kerr control");
  require_kind(s, spec.target, KetFactor::Kind::Coherent, "cross-Kerr target");
  auto terms = s.terms();
  for (auto& t : terms) {
    const int n = t.factors[spec.control].photons;
    t.factors[spec.target].amplitude *= std::polar(1.0, spec.theta * n);
  }
  return HybridState(s.modes(), std::move(terms));
}

HybridState apply_kerr_pi(const HybridState& s, std::size_t mode) {
  require_kind(s, mode, KetFactor::Kind::Coherent, "Kerr");
  const cplx w = std::polar(1.0 / std::numbers::sqrt2, -std::numbers::pi / 4.0);
  const cplx iw = cplx{0.0, 1.0} * w;
  std::vector<ProductTerm> out;
  out.reserve(2 * s.size());
  for (const auto& t : s.terms()) {
    ProductTerm same = t;
    same.coefficient *= w;
    ProductTerm flipped = t;
    flipped.coefficient *= iw;
    flipped.factors[mode].amplitude = -flipped.factors[mode].amplitude;
    out.push_back(std::move(same));
    out.push_back(std::move(flipped));
  }
  return prune(HybridState(s.modes(), std::move(out)), 0.0);
}

HybridState apply_ux(const HybridState& s, const KerrXSpec& spec) {
  const cplx half = 0.5 * spec.alpha;
  auto r = apply_displacement(s, {spec.mode, -half});
  r = apply_kerr_pi(r, spec.mode);
  r = apply_displacement(r, {spec.mode, half});
  return prune(r, 0.0);
}

HybridState apply_element(const HybridState& s, const Element& e) {
  return std::visit(
      [&s](const auto& spec) -> HybridState {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BeamSplitterSpec>)
          return apply_beam_splitter(s, spec);
        else if constexpr (std::is_same_v<T, PhaseShiftSpec>)
          return apply_phase_shifter(s, spec.mode, spec.phi);
        else if constexpr (std::is_same_v<T, DisplacementSpec>)
          return apply_displacement(s, spec);
        else if constexpr (std::is_same_v<T, CrossKerrSpec>)
          return apply_cross_kerr(s, spec);
        else
          return apply_ux(s, spec);
      },
      e);
}

HybridState apply_circuit(const HybridState& s, const std::vector<Element>& circuit) {
  HybridState cur = s;
  for (const auto& e : circuit) cur = apply_element(cur, e);
  return cur;
}

namespace {

template <typename T>
T read_field(std::istringstream& in, std::size_t lineno, const char* what) {
  T v{};
  if (!(in >> v)) throw ParseError("line " + std::to_string(lineno) + ": expected " + what);
  return v;
}

}  // namespace

std::vector<Element> parse_circuit(std::istream& is) {
  std::vector<Element> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream in(line);
    std::string tag;
    in >> tag;
    if (tag == "BS") {
      BeamSplitterSpec bs;
      bs.theta = read_field<double>(in, lineno, "theta");
      bs.phi = read_field<double>(in, lineno, "phi");
      bs.mode_a = read_field<std::size_t>(in, lineno, "mode a");
      bs.mode_b = read_field<std::size_t>(in, lineno, "mode b");
      out.emplace_back(bs);
    } else if (tag == "PS") {
      PhaseShiftSpec ps;
      ps.mode = read_field<std::size_t>(in, lineno, "mode");
      ps.phi = read_field<double>(in, lineno, "phi");
      out.emplace_back(ps);
    } else if (tag == "D") {
      DisplacementSpec d;
      d.mode = read_field<std::size_t>(in, lineno, "mode");
      const double re = read_field<double>(in, lineno, "re");
      const double im = read_field<double>(in, lineno, "im");
      d.beta = {re, im};
      out.emplace_back(d);
    } else if (tag == "CK") {
      CrossKerrSpec ck;
      ck.control = read_field<std::size_t>(in, lineno, "control mode");
      ck.target = read_field<std::size_t>(in, lineno, "target mode");
      ck.theta = read_field<double>(in, lineno, "theta");
      out.emplace_back(ck);
    } else if (tag == "UX") {
      KerrXSpec ux;
      ux.mode = read_field<std::size_t>(in, lineno, "mode");
      const double re = read_field<double>(in, lineno, "re");
      const double im = read_field<double>(in, lineno, "im");
      ux.alpha = {re, im};
      out.emplace_back(ux);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown element '" + tag + "'");
    }
    std::string rest;
    if (in >> rest) throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + rest + "'");
  }
  return out;
}

std::vector<Element> parse_circuit(const std::string& text) {
  std::istringstream is(text);
  return parse_circuit(is);
}

std::string format_element(const Element& e) {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(
      [&os](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BeamSplitterSpec>)
          os << "BS " << spec.theta << ' ' << spec.phi << ' ' << spec.mode_a << ' ' << spec.mode_b;
        else if constexpr (std::is_same_v<T, PhaseShiftSpec>)
          os << "PS " << spec.mode << ' ' << spec.phi;
        else if constexpr (std::is_same_v<T, DisplacementSpec>)
          os << "D " << spec.mode << ' ' << spec.beta.real() << ' ' << spec.beta.imag();
        else if constexpr (std::is_same_v<T, CrossKerrSpec>)
          os << "CK " << spec.control << ' ' << spec.target << ' ' << spec.theta;
        else
          os << "UX " << spec.mode << ' ' << spec.alpha.real() << ' ' << spec.alpha.imag();
      },
      e);
  return os.str();
}

}  // namespace ecs
