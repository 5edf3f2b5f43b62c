#include "ecs/states.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ecs/errors.hpp"
#include "detail/math.hpp"

namespace ecs {

KetFactor KetFactor::fock(int n) {
  if (n < 0) throw std::invalid_argument("negative photon number");
  if (n > kFockCap) throw PhotonCapError("Fock factor |" + std::to_string(n) + "> exceeds photon cap");
  return {Kind::Fock, cplx{0.0, 0.0}, n};
}

cplx factor_overlap(const KetFactor& bra, const KetFactor& ket) {
  using detail::coherent_overlap;
  using detail::fock_coherent_overlap;
  if (bra.is_coherent() && ket.is_coherent()) return coherent_overlap(bra.amplitude, ket.amplitude);
  if (bra.is_fock() && ket.is_fock()) return bra.photons == ket.photons ? 1.0 : 0.0;
  if (bra.is_fock()) return fock_coherent_overlap(bra.photons, ket.amplitude);
  return std::conj(fock_coherent_overlap(ket.photons, bra.amplitude));
}

namespace {

void validate_term(const ProductTerm& t, std::size_t modes) {
  if (t.factors.size() != modes)
    throw DimensionError("term has " + std::to_string(t.factors.size()) + " factors, state has " +
                         std::to_string(modes) + " modes");
  if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag()))
    throw std::invalid_argument("non-finite term coefficient");
  for (const auto& f : t.factors) {
    if (f.is_fock() && (f.photons < 0 || f.photons > kFockCap))
      throw PhotonCapError("Fock factor exceeds photon cap");
    if (f.is_coherent() && !(std::isfinite(f.amplitude.real()) && std::isfinite(f.amplitude.imag())))
      throw std::invalid_argument("non-finite coherent amplitude");
  }
}

void require_same_modes(const HybridState& a, const HybridState& b) {
  if (a.modes() != b.modes())
    throw DimensionError("mode count mismatch: " + std::to_string(a.modes()) + " vs " +
                         std::to_string(b.modes()));
}

// Coherent pairs contribute through a summed exponent so that products of many
// tiny overlaps do not underflow before combining with large prefactors.
cplx term_overlap(const ProductTerm& bra, const ProductTerm& ket) {
  cplx exponent{0.0, 0.0};
  cplx factor{1.0, 0.0};
  for (std::size_t m = 0; m < bra.factors.size(); ++m) {
    const auto& f = bra.factors[m];
    const auto& g = ket.factors[m];
    if (f.is_coherent() && g.is_coherent()) {
      exponent += detail::coherent_overlap_exponent(f.amplitude, g.amplitude);
    } else {
      factor *= factor_overlap(f, g);
      if (factor == cplx{0.0, 0.0}) return 0.0;
    }
  }
  return std::conj(bra.coefficient) * ket.coefficient * factor * std::exp(exponent);
}

bool factors_match(const std::vector<KetFactor>& a, const std::vector<KetFactor>& b, double eps) {
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m].kind != b[m].kind) return false;
    if (a[m].is_fock()) {
      if (a[m].photons != b[m].photons) return false;
    } else if (eps == 0.0) {
      if (a[m].amplitude != b[m].amplitude) return false;
    } else if (std::abs(a[m].amplitude - b[m].amplitude) > eps) {
      return false;
    }
  }
  return true;
}

}  // namespace

HybridState::HybridState(std::size_t modes, std::vector<ProductTerm> terms)
    : modes_(modes), terms_(std::move(terms)) {
  if (modes_ == 0) throw DimensionError("state must have at least one mode");
  for (const auto& t : terms_) validate_term(t, modes_);
}

HybridState HybridState::product(std::vector<KetFactor> factors) {
  const auto n = factors.size();
  return HybridState(n, {ProductTerm{1.0, std::move(factors)}});
}

HybridState HybridState::coherent_product(std::span<const cplx> amplitudes) {
  std::vector<KetFactor> f;
  f.reserve(amplitudes.size());
  for (auto a : amplitudes) f.push_back(KetFactor::coherent(a));
  return product(std::move(f));
}

HybridState HybridState::fock_product(std::span<const int> photons) {
  std::vector<KetFactor> f;
  f.reserve(photons.size());
  for (auto n : photons) f.push_back(KetFactor::fock(n));
  return product(std::move(f));
}

HybridState HybridState::vacuum(std::size_t modes) {
  return product(std::vector<KetFactor>(modes, KetFactor::vacuum()));
}

bool HybridState::mode_is(std::size_t mode, KetFactor::Kind kind) const {
  if (mode >= modes_) throw DimensionError("mode index " + std::to_string(mode) + " out of range");
  for (const auto& t : terms_)
    if (t.factors[mode].kind != kind) return false;
  return true;
}

HybridState HybridState::scaled(cplx c) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient *= c;
  return HybridState(modes_, std::move(terms));
}

cplx overlap(const HybridState& bra, const HybridState& ket) {
  require_same_modes(bra, ket);
  cplx acc{0.0, 0.0};
  for (const auto& b : bra.terms())
    for (const auto& k : ket.terms()) acc += term_overlap(b, k);
  return acc;
}

double norm(const HybridState& s) {
  const double sq = overlap(s, s).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

HybridState normalize(const HybridState& s) {
  const double n = norm(s);
  if (!(n > 1e-14)) throw DegenerateStateError("cannot normalize a zero-norm state");
  return s.scaled(1.0 / n);
}

HybridState superpose(const HybridState& a, const HybridState& b, cplx ca, cplx cb) {
  require_same_modes(a, b);
  std::vector<ProductTerm> terms;
  terms.reserve(a.size() + b.size());
  for (auto t : a.terms()) {
    t.coefficient *= ca;
    terms.push_back(std::move(t));
  }
  for (auto t : b.terms()) {
    t.coefficient *= cb;
    terms.push_back(std::move(t));
  }
  return HybridState(a.modes(), std::move(terms));
}

HybridState tensor(const HybridState& a, const HybridState& b) {
  std::vector<ProductTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      ProductTerm t;
      t.coefficient = x.coefficient * y.coefficient;
      t.factors = x.factors;
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      terms.push_back(std::move(t));
    }
  }
  return HybridState(a.modes() + b.modes(), std::move(terms));
}

double fidelity(const HybridState& a, const HybridState& b) {
  require_same_modes(a, b);
  const double na = overlap(a, a).real();
  const double nb = overlap(b, b).real();
  if (!(na > 1e-28) || !(nb > 1e-28)) throw DegenerateStateError("fidelity of a zero-norm state");
  return std::norm(overlap(a, b)) / (na * nb);
}

HybridState prune(const HybridState& s, double eps) {
  if (eps < 0.0) throw std::invalid_argument("prune tolerance must be non-negative");
  std::vector<ProductTerm> merged;
  for (const auto& t : s.terms()) {
    bool found = false;
    for (auto& m : merged) {
      if (factors_match(m.factors, t.factors, eps)) {
        m.coefficient += t.coefficient;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  std::vector<ProductTerm> kept;
  kept.reserve(merged.size());
  for (auto& m : merged)
    if (!(std::abs(m.coefficient) < eps)) kept.push_back(std::move(m));
  return HybridState(s.modes(), std::move(kept));
}

HybridState permute_modes(const HybridState& s, std::span<const std::size_t> order) {
  if (order.size() != s.modes()) throw DimensionError("permutation length differs from mode count");
  std::vector<bool> seen(s.modes(), false);
  for (auto i : order) {
    if (i >= s.modes() || seen[i]) throw std::invalid_argument("not a permutation of the modes");
    seen[i] = true;
  }
  std::vector<ProductTerm> terms;
  terms.reserve(s.size());
  for (const auto& t : s.terms()) {
    ProductTerm p{t.coefficient, {}};
    p.factors.reserve(order.size());
    for (auto i : order) p.factors.push_back(t.factors[i]);
    terms.push_back(std::move(p));
  }
  return HybridState(s.modes(), std::move(terms));
}

void write_text(std::ostream& os, const HybridState& s) {
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& t : s.terms()) {
    line.str({});
    line << t.coefficient.real() << ' ' << t.coefficient.imag() << " |";
    for (const auto& f : t.factors) {
      if (f.is_coherent())
        line << " C:" << f.amplitude.real() << ',' << f.amplitude.imag();
      else
        line << " F:" << f.photons;
    }
    os << line.str() << '\n';
  }
}

std::string to_text(const HybridState& s) {
  std::ostringstream os;
  write_text(os, s);
  return os.str();
}

namespace {

double parse_double(const std::string& tok, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
  return v;
}

KetFactor parse_factor(const std::string& tok, std::size_t lineno) {
  if (tok.size() < 3 || tok[1] != ':')
    throw ParseError("line " + std::to_string(lineno) + ": bad factor '" + tok + "'");
  const std::string body = tok.substr(2);
  if (tok[0] == 'C') {
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": coherent factor needs re,im");
    return KetFactor::coherent(
        {parse_double(body.substr(0, comma), lineno), parse_double(body.substr(comma + 1), lineno)});
  }
  if (tok[0] == 'F') {
    std::size_t used = 0;
    int n = -1;
    try {
      n = std::stoi(body, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != body.size() || n < 0)
      throw ParseError("line " + std::to_string(lineno) + ": bad photon number '" + body + "'");
    return KetFactor::fock(n);
  }
  throw ParseError("line " + std::to_string(lineno) + ": unknown factor kind '" + tok.substr(0, 1) + "'");
}

}  // namespace

HybridState read_text(std::istream& is) {
  std::vector<ProductTerm> terms;
  std::size_t modes = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing '|'");
    std::istringstream head(line.substr(0, bar));
    std::string re, im, extra;
    if (!(head >> re >> im) || (head >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected 're im' before '|'");
    ProductTerm t{{parse_double(re, lineno), parse_double(im, lineno)}, {}};
    std::istringstream body(line.substr(bar + 1));
    std::string tok;
    while (body >> tok) t.factors.push_back(parse_factor(tok, lineno));
    if (t.factors.empty()) throw ParseError("line " + std::to_string(lineno) + ": term has no factors");
    if (modes == 0) modes = t.factors.size();
    if (t.factors.size() != modes)
      throw ParseError("line " + std::to_string(lineno) + ": inconsistent number of modes");
    terms.push_back(std::move(t));
  }
  if (terms.empty()) throw ParseError("state text contains no terms");
  return HybridState(modes, std::move(terms));
}

HybridState from_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

}  // namespace ecs
