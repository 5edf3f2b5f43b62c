#include "ecs/measure.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "detail/ghz.hpp"
#include "detail/math.hpp"
#include "ecs/elements.hpp"
#include "ecs/errors.hpp"

namespace ecs {

namespace {

// Matrix element split as mult * exp(log) so coherent exponents can be summed
// across modes before exponentiating.
struct Element {
  cplx mult{1.0, 0.0};
  cplx log{0.0, 0.0};
};

// <f|D(beta)|g>
Element displacement_element(const KetFactor& f, cplx beta, const KetFactor& g) {
  using namespace detail;
  if (f.is_coherent() && g.is_coherent()) {
    return {1.0, displacement_phase_exponent(beta, g.amplitude) +
                     coherent_overlap_exponent(f.amplitude, g.amplitude + beta)};
  }
  if (f.is_fock() && g.is_coherent()) {
    return {fock_coherent_overlap(f.photons, g.amplitude + beta), displacement_phase_exponent(beta, g.amplitude)};
  }
  if (f.is_coherent() && g.is_fock()) {
    // <a|D(b)|n> = conj(<n|D(-b)|a>)
    return {std::conj(fock_coherent_overlap(g.photons, f.amplitude - beta)),
            std::conj(displacement_phase_exponent(-beta, f.amplitude))};
  }
  return {fock_displacement_element(f.photons, g.photons, beta), 0.0};
}

// <f|D(beta) P D^dag(beta)|g> = <f|D(2 beta) P|g>
Element parity_element(const KetFactor& f, const KetFactor& g, cplx beta) {
  if (g.is_coherent()) return displacement_element(f, 2.0 * beta, KetFactor::coherent(-g.amplitude));
  auto e = displacement_element(f, 2.0 * beta, g);
  if (g.photons % 2 == 1) e.mult = -e.mult;
  return e;
}

// <f|D^dag(beta) (2|0><0| - I) D(beta)|g>
Element threshold_element(const KetFactor& f, const KetFactor& g, cplx beta) {
  const auto vac = KetFactor::fock(0);
  const auto left = displacement_element(f, -beta, vac);
  const auto right = displacement_element(vac, beta, g);
  const cplx proj = left.mult * right.mult * std::exp(left.log + right.log);
  return {2.0 * proj - factor_overlap(f, g), 0.0};
}

Element overlap_element(const KetFactor& f, const KetFactor& g) {
  if (f.is_coherent() && g.is_coherent())
    return {1.0, detail::coherent_overlap_exponent(f.amplitude, g.amplitude)};
  return {factor_overlap(f, g), 0.0};
}

template <typename ElementFn>
double expect_local(const HybridState& s, ElementFn&& element) {
  cplx num{0.0, 0.0};
  cplx den{0.0, 0.0};
  for (const auto& bra : s.terms()) {
    for (const auto& ket : s.terms()) {
      const cplx cc = std::conj(bra.coefficient) * ket.coefficient;
      cplx nm{1.0, 0.0}, nl{0.0, 0.0}, dm{1.0, 0.0}, dl{0.0, 0.0};
      for (std::size_t m = 0; m < s.modes(); ++m) {
        const auto e = element(m, bra.factors[m], ket.factors[m]);
        nm *= e.mult;
        nl += e.log;
        const auto o = overlap_element(bra.factors[m], ket.factors[m]);
        dm *= o.mult;
        dl += o.log;
      }
      num += cc * nm * std::exp(nl);
      den += cc * dm * std::exp(dl);
    }
  }
  if (!(den.real() > 1e-28)) throw DegenerateStateError("expectation value of a zero-norm state");
  return num.real() / den.real();
}

void require_settings(const HybridState& s, std::size_t n) {
  if (n != s.modes())
    throw DimensionError("expected " + std::to_string(s.modes()) + " settings, got " + std::to_string(n));
}

}  // namespace

double expect_displaced_parity(const HybridState& s, std::span<const cplx> betas) {
  require_settings(s, betas.size());
  return expect_local(s, [&](std::size_t m, const KetFactor& f, const KetFactor& g) {
    return parity_element(f, g, betas[m]);
  });
}

double expect_displaced_threshold(const HybridState& s, std::span<const cplx> betas) {
  require_settings(s, betas.size());
  return expect_local(s, [&](std::size_t m, const KetFactor& f, const KetFactor& g) {
    return threshold_element(f, g, betas[m]);
  });
}

cplx characteristic_ghz(const std::array<cplx, 3>& eta, cplx alpha, GhzSign sign) {
  double eta_sq = 0.0;
  for (auto e : eta) eta_sq += std::norm(e);
  if (sign == GhzSign::Minus && std::abs(alpha) < kSmallAlpha) {
    const cplx sum = eta[0] + eta[1] + eta[2];
    return std::exp(-0.5 * eta_sq) * (3.0 - std::norm(sum)) / 3.0;
  }
  const double a2 = std::norm(alpha);
  cplx odd{0.0, 0.0};   // sum eta a* - eta* a
  cplx even{0.0, 0.0};  // sum eta a* + eta* a
  for (auto e : eta) {
    odd += e * std::conj(alpha) - std::conj(e) * alpha;
    even += e * std::conj(alpha) + std::conj(e) * alpha;
  }
  const double s = sign_value(sign);
  const cplx base = -0.5 * eta_sq;
  const cplx bracket = std::exp(base + odd) + std::exp(base - odd) +
                       s * (std::exp(base - 6.0 * a2 - even) + std::exp(base - 6.0 * a2 + even));
  return bracket / detail::ghz_norm_sq(a2, sign);
}

double wigner_ghz(const std::array<cplx, 3>& beta, cplx alpha, GhzSign sign) {
  if (sign == GhzSign::Minus && std::abs(alpha) < kSmallAlpha)
    throw SingularNormalizationError("GHZ Minus Wigner normalization is singular for |alpha| < 1e-8");
  return 8.0 / (std::numbers::pi * std::numbers::pi * std::numbers::pi) *
         detail::ghz_parity_correlation(beta, alpha, sign);
}

ThresholdElements jkl(cplx alpha, cplx beta) {
  const double j = 2.0 * std::exp(-std::norm(alpha + beta)) - 1.0;
  const double k = 2.0 * std::exp(-std::norm(alpha - beta)) - 1.0;
  const cplx pre = -0.5 * std::norm(alpha + beta) - 0.5 * std::norm(alpha - beta) + alpha * std::conj(beta) -
                   std::conj(alpha) * beta;
  // The bracket's exponential is folded into the prefactor so large |beta| cannot overflow.
  const cplx l = 2.0 * std::exp(pre) - std::exp(pre - std::conj(alpha + beta) * (alpha - beta));
  return {j, k, l};
}

double expect_a_tau(const HybridState& s, std::span<const int> taus, cplx alpha) {
  require_settings(s, taus.size());
  HybridState rotated = s;
  for (std::size_t m = 0; m < taus.size(); ++m) {
    if (taus[m] != 0 && taus[m] != 1) throw std::invalid_argument("tau settings must be 0 or 1");
    if (taus[m] == 1) rotated = apply_ux(rotated, {m, alpha});
  }
  return expect_local(rotated, [](std::size_t, const KetFactor& f, const KetFactor& g) {
    return threshold_element(f, g, 0.0);
  });
}

HybridState trace_out_definite(const HybridState& s, std::size_t mode) {
  if (mode >= s.modes()) throw DimensionError("mode index out of range");
  if (s.modes() < 2) throw DimensionError("cannot remove the only mode of a state");
  if (!s.mode_is(mode, KetFactor::Kind::Fock)) throw UnsupportedKindError("traced mode must be Fock");
  std::vector<ProductTerm> terms;
  terms.reserve(s.size());
  int n = -1;
  for (const auto& t : s.terms()) {
    const int k = t.factors[mode].photons;
    if (n < 0) n = k;
    if (k != n) throw UnsupportedKindError("traced mode does not hold a definite photon number");
    ProductTerm p{t.coefficient, t.factors};
    p.factors.erase(p.factors.begin() + static_cast<std::ptrdiff_t>(mode));
    terms.push_back(std::move(p));
  }
  return HybridState(s.modes() - 1, std::move(terms));
}

std::array<DetectionBranch, 2> threshold_detect(const HybridState& s, std::size_t mode) {
  if (mode >= s.modes()) throw DimensionError("mode index out of range");
  if (!s.mode_is(mode, KetFactor::Kind::Fock))
    throw UnsupportedKindError("threshold detection requires a Fock mode");
  const double total = overlap(s, s).real();
  if (!(total > 1e-28)) throw DegenerateStateError("threshold detection of a zero-norm state");

  // Photon-number sectors of the detected mode are mutually orthogonal.
  std::map<int, std::vector<ProductTerm>> sectors;
  for (const auto& t : s.terms()) sectors[t.factors[mode].photons].push_back(t);
  std::map<int, double> weight;
  for (const auto& [n, terms] : sectors) weight[n] = overlap(HybridState(s.modes(), terms), HybridState(s.modes(), terms)).real() / total;

  auto collapse = [&](bool click) -> DetectionBranch {
    DetectionBranch b{click ? Click::Click : Click::NoClick, 0.0, std::nullopt};
    int dominant = -1;
    int populated = 0;
    for (const auto& [n, w] : weight) {
      if ((n >= 1) != click) continue;
      b.probability += w;
      if (w > 1e-24) {
        ++populated;
        dominant = n;
      }
    }
    if (populated == 0 || s.modes() < 2) return b;
    if (populated > 1)
      throw UnsupportedKindError("click branch mixes several photon numbers; reduced state would be mixed");
    b.state = normalize(trace_out_definite(HybridState(s.modes(), sectors[dominant]), mode));
    return b;
  };
  return {collapse(false), collapse(true)};
}

}  // namespace ecs
