#include <cmath>

#include "doctest.h"
#include "ecs/bell.hpp"
#include "ecs/circuits.hpp"
#include "ecs/errors.hpp"
#include "ecs/fockoracle.hpp"
#include "support.hpp"

using namespace ecs;

namespace {

BellSettings random_settings(std::mt19937_64& rng, double scale) {
  return {testing::random_betas(rng, scale), testing::random_betas(rng, scale)};
}

BellSettings rotate_parties(const BellSettings& s) {
  return {{s.unprimed[1], s.unprimed[2], s.unprimed[0]}, {s.primed[1], s.primed[2], s.primed[0]}};
}

}  // namespace

TEST_SUITE("bell") {
  TEST_CASE("settings parameter order") {
    std::array<double, 12> p{};
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = 0.1 * static_cast<double>(i + 1);
    const auto s = BellSettings::from_params(p);
    CHECK(std::abs(s.unprimed[1] - cplx{0.3, 0.4}) < 1e-15);
    CHECK(std::abs(s.primed[0] - cplx{0.7, 0.8}) < 1e-15);
    CHECK(s.to_params() == p);
    const std::array<double, 3> short_p{};
    CHECK_THROWS_AS(BellSettings::from_params(short_p), DimensionError);
  }

  TEST_CASE("zero settings") {
    CHECK(bm_parity(0.7, GhzSign::Minus, {}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bm_parity(1e-10, GhzSign::Minus, {}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bm_threshold(0.7, 1.0, -1.0, {}) == doctest::Approx(bm_threshold_state(ghz_reference(0.7, 1.0, -1.0), {})).epsilon(1e-12));
    CHECK_THROWS_AS(bm_threshold(0.7, 0.0, 0.0, {}), DegenerateStateError);
  }

  TEST_CASE("closed forms agree with generic expectations") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 30; ++i) {
      const double alpha = 0.1 + 0.1 * i;
      const auto s = random_settings(rng, 1.0);
      for (auto sign : {GhzSign::Plus, GhzSign::Minus}) {
        const auto ghz = ghz_reference(alpha, 1.0, sign_value(sign));
        CHECK(std::abs(bm_parity(alpha, sign, s) - bm_parity_state(ghz, s)) < 1e-10);
        CHECK(std::abs(bm_threshold(alpha, 1.0, sign_value(sign), s) - bm_threshold_state(ghz, s)) < 1e-10);
      }
    }
    // Singular Minus limit goes through the single-photon state.
    const auto s = random_settings(rng, 0.5);
    CHECK(std::abs(bm_parity(0.0, GhzSign::Minus, s) - bm_parity_state(single_photon_w(3), s)) < 1e-14);
    CHECK(std::abs(bm_threshold(0.0, 1.0, -1.0, s) - bm_threshold_state(single_photon_w(3), s)) < 1e-14);
    CHECK(std::abs(bm_threshold(1e-6, 1.0, -1.0, s) - bm_threshold(0.0, 1.0, -1.0, s)) < 1e-5);
  }

  TEST_CASE("bounds and party symmetry") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 50; ++i) {
      const double alpha = 0.05 + 0.06 * i;
      const auto s = random_settings(rng, 1.2);
      for (auto sign : {GhzSign::Plus, GhzSign::Minus}) {
        const double p = bm_parity(alpha, sign, s);
        const double t = bm_threshold(alpha, 1.0, sign_value(sign), s);
        CHECK(p >= 0.0);
        CHECK(p <= kMerminQuantumBound + 1e-9);
        CHECK(t <= kMerminQuantumBound + 1e-9);
        CHECK(std::abs(p - bm_parity(alpha, sign, rotate_parties(s))) < 1e-10);
        CHECK(std::abs(t - bm_threshold(alpha, 1.0, sign_value(sign), rotate_parties(s))) < 1e-10);
      }
      TauBellSettings ts;
      ts.unprimed = {i % 2, (i / 2) % 2, (i / 4) % 2};
      ts.primed = {(i / 8) % 2, (i / 16) % 2, 1};
      CHECK(bm_w_generic(0.1 * i, ts) <= kMerminQuantumBound + 1e-9);
    }
  }

  TEST_CASE("threshold value matches dense computation at zero settings") {
    namespace o = ecs::oracle;
    for (double alpha : {0.2, 0.9, 1.6}) {
      const auto ghz = ghz_reference(alpha, 1.0, -1.0);
      const auto t = o::adequate_truncation(ghz);
      const auto v = o::to_fock(ghz, t);
      std::vector<o::Matrix> thr;
      for (std::size_t m = 0; m < 3; ++m) thr.push_back(o::operator_matrix(o::op::ThresholdDisplaced{0.0}, {{t.dims[m]}}));
      const double e = o::expect(thr, v).real();
      CHECK(std::abs(bm_threshold(alpha, 1.0, -1.0, {}) - std::abs(-2.0 * e)) < 1e-8);
    }
  }

  TEST_CASE("logical-observable Bell function") {
    CHECK(bm_w_closed(0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(bm_w_generic(0.0, {}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bm_w_closed(2.0) == doctest::Approx(2.7902).epsilon(1e-4));
    CHECK(bm_w_closed(3.0) == doctest::Approx(2.9986).epsilon(1e-4));
    for (double a : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      CHECK(std::abs(bm_w_generic(a, {}) - bm_w_closed(a)) < 1e-10);
      CHECK(std::abs(bm_w_closed(a) - std::abs(v_closed(a) - 3.0 * w_closed(a))) < 1e-12);
      TauBellSettings degenerate;
      degenerate.primed = {0, 0, 0};
      CHECK(bm_w_generic(a, degenerate) == doctest::Approx(2.0 * std::abs(v_closed(a))).epsilon(1e-10));
      CHECK(bm_w_generic(a, degenerate) <= 2.0 + 1e-12);
    }
  }

  TEST_CASE("violation onset bisection") {
    const double onset = find_violation_onset(bm_w_closed, 1.0, 2.0, 1e-6);
    CHECK(onset == doctest::Approx(1.49).epsilon(0.02 / 1.49));
    CHECK(bm_w_closed(onset) == doctest::Approx(2.0).epsilon(1e-4));

    const double c = find_violation_onset([](double) { return 2.0; }, 0.0, 1.0, 1e-6);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    const double falling = find_violation_onset([](double x) { return 3.0 - x; }, 0.0, 2.0, 1e-9);
    CHECK(falling == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(find_violation_onset([](double x) { return 3.0 + x; }, 0.0, 1.0, 1e-6), BracketError);
    CHECK_THROWS(find_violation_onset(bm_w_closed, 2.0, 1.0, 1e-6));
  }
}
