#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ecs/circuits.hpp"
#include "ecs/elements.hpp"
#include "ecs/errors.hpp"
#include "ecs/fockoracle.hpp"
#include "oracle_checks.hpp"

using namespace ecs;

namespace {

double exact_e(cplx gamma, double theta) { return std::exp(-4.0 * std::norm(w_effective_alpha(gamma, theta))); }

}  // namespace

TEST_SUITE("circuits") {
  TEST_CASE("cat states") {
    const auto plain = css(0.9, 1.0, 0.0);
    CHECK(fidelity(plain, HybridState::coherent_product(std::vector<cplx>{0.9})) == doctest::Approx(1.0));
    const std::array<cplx, 1> zero{};
    CHECK(expect_displaced_parity(css(1.0, 1.0, -1.0), zero) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(fidelity(css(1e-4, 1.0, -1.0), HybridState::fock_product(std::vector<int>{1})) >= 0.999);
    CHECK_THROWS_AS(css(0.0, 1.0, -1.0), DegenerateStateError);

    namespace o = ecs::oracle;
    const auto odd = css(1.0, 1.0, -1.0);
    const auto t = o::adequate_truncation(odd);
    const std::vector<o::Matrix> p{o::operator_matrix(o::op::ParityDisplaced{0.0}, t)};
    CHECK(o::expect(p, o::to_fock(odd, t)).real() == doctest::Approx(-1.0).epsilon(1e-10));
  }

  TEST_CASE("GHZ generation") {
    for (double a : {0.1, 1.0, 3.0}) {
      CHECK(fidelity(generate_ghz(a, GhzSign::Minus, 3), ghz_reference(a, 1.0, -1.0)) >= 1.0 - 1e-12);
      CHECK(fidelity(generate_ghz(a, GhzSign::Plus, 3), ghz_reference(a, 1.0, 1.0)) >= 1.0 - 1e-12);
    }
    CHECK(fidelity(generate_ghz(1e-3, GhzSign::Minus, 3), single_photon_w(3)) >= 0.999);
    CHECK(fidelity(generate_ghz(0.0, GhzSign::Minus, 3), single_photon_w(3)) == doctest::Approx(1.0));
    const auto two = generate_ghz(1.0, GhzSign::Plus, 2);
    CHECK(two.modes() == 2);
    CHECK(norm(two) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fidelity(generate_ghz(0.7, GhzSign::Minus, 5), ghz_reference(0.7, 1.0, -1.0, 5)) >= 1.0 - 1e-12);
    CHECK_THROWS(generate_ghz(1.0, GhzSign::Plus, 1));
  }

  TEST_CASE("W reference states") {
    for (double a : {0.3, 1.0, 2.0}) {
      const auto w = w_reference(a, 1.0, 1.0, 1.0);
      CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-13));
      for (const auto& t : w.terms())
        CHECK(std::abs(t.coefficient) == doctest::Approx(1.0 / std::sqrt(3.0 + 6.0 * std::exp(-4.0 * a * a))).epsilon(1e-12));
      // Displacing by a/2 and relabelling a -> 2a gives the logical form.
      auto shifted = w;
      for (std::size_t m = 0; m < 3; ++m) shifted = apply_displacement(shifted, {m, a});
      CHECK(fidelity(shifted, w_logical(2.0 * a)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto two_term = w_reference(1.0, 1.0, 1.0, 0.0);
    CHECK(norm(two_term) == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("W circuit intermediate states") {
    const WCircuitSpec spec{{1.7, 0.0}, 0.5, false};
    const auto tr = trace_w_circuit(spec);
    const std::array<int, 3> e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    auto weight = [&](std::span<const int> n) { return std::norm(overlap(HybridState::fock_product(n), tr.single_photon)); };
    const std::array<double, 3> w{weight(e0), weight(e1), weight(e2)};
    auto sorted = w;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(sorted[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(sorted[2] == doctest::Approx(0.4).epsilon(1e-12));

    REQUIRE(tr.field.size() == 1);
    for (const auto& f : tr.field.terms()[0].factors) CHECK(std::abs(f.amplitude) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(tr.after_kerr.size() == 3);
    CHECK(norm(tr.pre_detection) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(trace_w_circuit({1.0, 0.0, false}));
  }

  TEST_CASE("W circuit branch probabilities") {
    for (const auto& [g, th] : {std::pair{4.0, 0.4}, std::pair{1.5, 0.8}, std::pair{6.0, 0.6}, std::pair{0.7, 2.5}}) {
      const auto out = run_w_circuit({g, th, true});
      REQUIRE(out.size() == 3);
      const double e = exact_e(g, th);
      CHECK(out[0].detector == Detector::A);
      CHECK(out[0].probability == doctest::Approx((2.0 - 2.0 * e) / 5.0).epsilon(1e-12));
      CHECK(out[1].probability == doctest::Approx((3.0 + 6.0 * e) / 10.0).epsilon(1e-12));
      CHECK(out[2].probability == doctest::Approx((3.0 - 2.0 * e) / 10.0).epsilon(1e-12));
      CHECK(std::abs(out[0].probability + out[1].probability + out[2].probability - 1.0) < 1e-12);
      for (const auto& o : out) CHECK(norm(o.state) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto big = run_w_circuit({6.0, 0.6, false});
    CHECK(big[0].probability == doctest::Approx(0.4).epsilon(0.01 / 0.4));
    CHECK(big[1].probability + big[2].probability == doctest::Approx(0.6).epsilon(0.01 / 0.6));
  }

  TEST_CASE("W heralded states") {
    const cplx gamma{2.5, 0.0};
    const double theta = 0.9;
    const cplx alpha = w_effective_alpha(gamma, theta);
    CHECK(std::abs(alpha - 0.5 * gamma * (std::polar(1.0, theta) - 1.0)) < 1e-15);
    const auto out = run_w_circuit({gamma, theta, true});

    CHECK(fidelity(out[1].state, w_reference(alpha, 1.0, 1.0, 1.0)) >= 1.0 - 1e-10);
    CHECK(out[1].is_w_type);
    CHECK(out[1].sign_pattern == SignPattern{1, 1, 1});
    CHECK(out[2].is_w_type);
    CHECK(fidelity(out[2].state, w_reference(alpha, out[2].sign_pattern[0], out[2].sign_pattern[1],
                                              out[2].sign_pattern[2])) >= 1.0 - 1e-10);
    int negatives = 0;
    for (int s : out[2].sign_pattern) negatives += s < 0;
    CHECK(negatives == 1);
    CHECK_FALSE(out[0].is_w_type);

    const auto cls = classify_w_outcome(out[1], alpha);
    CHECK(cls.is_w_type);
    CHECK(cls.fidelity >= 1.0 - 1e-10);
    CHECK_FALSE(classify_w_outcome(out[0], alpha).is_w_type);

    // Classification is independent of the final displacement.
    const auto raw = run_w_circuit({gamma, theta, false});
    CHECK(raw[1].is_w_type);
    CHECK(raw[2].sign_pattern == out[2].sign_pattern);
  }

  TEST_CASE("W circuit agrees with the dense evolution") {
    const auto dense = app::dense_w_circuit(1.5, 0.8);
    const auto exact = run_w_circuit({1.5, 0.8, false});
    for (std::size_t d = 0; d < 3; ++d) {
      CHECK(std::abs(dense.probabilities[d] - exact[d].probability) < 1e-8);
      CHECK(dense.fidelities[d] == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}
