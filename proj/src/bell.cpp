#include "ecs/bell.hpp"

#include <cmath>

#include "detail/ghz.hpp"
#include "ecs/circuits.hpp"
#include "ecs/errors.hpp"

namespace ecs {

BellSettings BellSettings::from_params(std::span<const double> p) {
  if (p.size() != kParams) throw DimensionError("Bell settings need 12 real parameters");
  BellSettings s;
  for (std::size_t i = 0; i < 3; ++i) {
    s.unprimed[i] = {p[2 * i], p[2 * i + 1]};
    s.primed[i] = {p[6 + 2 * i], p[6 + 2 * i + 1]};
  }
  return s;
}

std::array<double, BellSettings::kParams> BellSettings::to_params() const {
  std::array<double, kParams> p{};
  for (std::size_t i = 0; i < 3; ++i) {
    p[2 * i] = unprimed[i].real();
    p[2 * i + 1] = unprimed[i].imag();
    p[6 + 2 * i] = primed[i].real();
    p[6 + 2 * i + 1] = primed[i].imag();
  }
  return p;
}

namespace {

bool is_singular_minus(cplx alpha, cplx c1, cplx c2) {
  return std::abs(alpha) < kSmallAlpha && std::abs(c1 + c2) <= 1e-12 * (std::abs(c1) + std::abs(c2));
}

// Below this amplitude the coherent-state form of the correlation loses digits
// to the c1|a> + c2|-a> cancellation, so the state is expanded in Fock space.
constexpr double kSeriesAlpha = 1e-3;
constexpr int kSeriesPhotons = 4;

HybridState ghz_fock_series(cplx alpha, cplx c1, cplx c2) {
  std::vector<ProductTerm> terms;
  for (int n1 = 0; n1 <= kSeriesPhotons; ++n1)
    for (int n2 = 0; n1 + n2 <= kSeriesPhotons; ++n2)
      for (int n3 = 0; n1 + n2 + n3 <= kSeriesPhotons; ++n3) {
        const int n = n1 + n2 + n3;
        const double fact = std::tgamma(n1 + 1.0) * std::tgamma(n2 + 1.0) * std::tgamma(n3 + 1.0);
        const cplx an = std::pow(alpha, n);
        const cplx c = (c1 * an + c2 * (n % 2 ? -an : an)) / std::sqrt(fact);
        if (c == cplx{0.0, 0.0}) continue;
        terms.push_back({c, {KetFactor::fock(n1), KetFactor::fock(n2), KetFactor::fock(n3)}});
      }
  return HybridState(3, std::move(terms));
}

}  // namespace

double bm_parity(cplx alpha, GhzSign sign, const BellSettings& settings) {
  if (sign == GhzSign::Minus && std::abs(alpha) < kSmallAlpha)
    return bm_parity_state(single_photon_w(3), settings);
  return mermin(settings.unprimed, settings.primed, [&](const std::array<cplx, 3>& b) {
    return detail::ghz_parity_correlation(b, alpha, sign);
  });
}

double bm_parity_state(const HybridState& s, const BellSettings& settings) {
  return mermin(settings.unprimed, settings.primed,
                [&](const std::array<cplx, 3>& b) { return expect_displaced_parity(s, b); });
}

double threshold_correlation_ghz(cplx alpha, cplx c1, cplx c2, const std::array<cplx, 3>& betas) {
  if (is_singular_minus(alpha, c1, c2)) return expect_displaced_threshold(single_photon_w(3), betas);
  const double norm_sq = std::norm(c1) + std::norm(c2) +
                         2.0 * (std::conj(c1) * c2).real() * std::exp(-6.0 * std::norm(alpha));
  if (!(norm_sq > 1e-28)) throw DegenerateStateError("GHZ coefficients give a zero-norm state");
  if (std::abs(alpha) < kSeriesAlpha) return expect_displaced_threshold(ghz_fock_series(alpha, c1, c2), betas);
  double jjj = 1.0, kkk = 1.0;
  cplx lll{1.0, 0.0};
  for (auto b : betas) {
    const auto e = jkl(alpha, b);
    jjj *= e.j;
    kkk *= e.k;
    lll *= e.l;
  }
  return (std::norm(c1) * jjj + std::norm(c2) * kkk + 2.0 * (std::conj(c1) * c2 * lll).real()) / norm_sq;
}

double bm_threshold(cplx alpha, cplx c1, cplx c2, const BellSettings& settings) {
  if (c1 == cplx{0.0, 0.0} && c2 == cplx{0.0, 0.0}) throw DegenerateStateError("both GHZ coefficients are zero");
  return mermin(settings.unprimed, settings.primed,
                [&](const std::array<cplx, 3>& b) { return threshold_correlation_ghz(alpha, c1, c2, b); });
}

double bm_threshold_state(const HybridState& s, const BellSettings& settings) {
  return mermin(settings.unprimed, settings.primed,
                [&](const std::array<cplx, 3>& b) { return expect_displaced_threshold(s, b); });
}

double bm_w_generic(double alpha, const TauBellSettings& settings) {
  const auto state = w_logical(alpha);
  return mermin(settings.unprimed, settings.primed,
                [&](const std::array<int, 3>& t) { return expect_a_tau(state, t, alpha); });
}

double v_closed(double alpha) {
  const double e = std::exp(alpha * alpha);
  return (4.0 - e) / (2.0 + e);
}

double w_closed(double alpha) {
  const double a2 = alpha * alpha;
  const double e = std::exp(a2);
  return -(2.0 - 2.0 * std::exp(-2.0 * a2) - 7.0 * std::exp(-a2) - 2.0 * e) / (3.0 * (2.0 + e));
}

double bm_w_closed(double alpha) {
  const double a2 = alpha * alpha;
  const double e = std::exp(a2);
  return std::abs((6.0 - 2.0 * std::exp(-2.0 * a2) - 7.0 * std::exp(-a2) - 3.0 * e) / (2.0 + e));
}

double find_violation_onset(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  double glo = f(lo) - kMerminClassicalBound;
  const double ghi = f(hi) - kMerminClassicalBound;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0))
    throw BracketError("f - 2 has the same sign at both ends of [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = f(mid) - kMerminClassicalBound;
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ecs
