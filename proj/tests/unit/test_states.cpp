#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ecs/circuits.hpp"
#include "ecs/elements.hpp"
#include "ecs/errors.hpp"
#include "ecs/states.hpp"
#include "support.hpp"

using namespace ecs;

namespace {

HybridState coherent(cplx a) { return HybridState::coherent_product(std::vector<cplx>{a}); }
HybridState fock(int n) { return HybridState::fock_product(std::vector<int>{n}); }

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("coherent and Fock overlaps") {
    CHECK(std::abs(overlap(coherent(1.0), coherent(1.0)) - 1.0) < 1e-15);
    CHECK(std::abs(overlap(fock(0), coherent(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(overlap(fock(0), coherent(2.0)) - std::exp(-2.0)) < 1e-15);
    CHECK(std::abs(overlap(fock(3), coherent(cplx{0.3, -0.7})) -
                   std::exp(-0.5 * 0.58) * std::pow(cplx{0.3, -0.7}, 3) / std::sqrt(6.0)) < 1e-15);
    CHECK(overlap(fock(1), fock(2)) == cplx{0.0, 0.0});
    // Far-apart coherent states: the exponent is summed, so no spurious underflow-to-NaN.
    const auto far = overlap(coherent(30.0), coherent(-30.0));
    CHECK(std::isfinite(far.real()));
    CHECK(far == cplx{0.0, 0.0});
  }

  TEST_CASE("norms") {
    CHECK(norm(coherent(cplx{0.4, 1.1})) == doctest::Approx(1.0).epsilon(1e-14));
    const auto odd = superpose(coherent(1.0), coherent(-1.0), 1.0, -1.0);
    CHECK(norm(odd) == doctest::Approx(std::sqrt(2.0 - 2.0 * std::exp(-2.0))).epsilon(1e-14));
    CHECK(norm(odd) == doctest::Approx(1.315040).epsilon(1e-6));
  }

  TEST_CASE("normalize") {
    const auto s = normalize(HybridState::vacuum(1).scaled(2.0));
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s.terms()[0].coefficient - 1.0) < 1e-15);

    for (double a : {0.3, 1.0, 2.5}) {
      const auto w = w_logical(a);
      for (const auto& t : w.terms())
        CHECK(std::abs(t.coefficient) == doctest::Approx(1.0 / std::sqrt(3.0 + 6.0 * std::exp(-a * a))).epsilon(1e-13));
    }
    const auto single = single_photon_w(3);
    CHECK(norm(single) == doctest::Approx(1.0).epsilon(1e-15));
    const auto rescaled = normalize(single.scaled(5.0));
    for (const auto& t : rescaled.terms())
      CHECK(std::abs(t.coefficient) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

    CHECK_THROWS_AS(normalize(superpose(coherent(1.0), coherent(1.0), 1.0, -1.0)), DegenerateStateError);
  }

  TEST_CASE("normalize is idempotent") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
      const auto s = testing::random_coherent_state(rng, 2, 3, 1.5);
      const auto s2 = normalize(s);
      for (std::size_t k = 0; k < s.size(); ++k)
        CHECK(std::abs(s.terms()[k].coefficient - s2.terms()[k].coefficient) < 1e-12);
    }
  }

  TEST_CASE("superpose and tensor") {
    const auto cat = superpose(coherent(1.0), coherent(-1.0), 0.6, 0.8);
    CHECK(cat.size() == 2);
    CHECK(cat.terms()[1].coefficient == cplx{0.8, 0.0});
    CHECK(norm(superpose(cat, cat, 1.0, -1.0)) < 1e-12);
    CHECK_THROWS_AS(superpose(coherent(1.0), HybridState::vacuum(2), 1.0, 1.0), DimensionError);

    const auto t = tensor(fock(1), coherent(2.0));
    CHECK(t.modes() == 2);
    CHECK(t.size() == 1);
    const auto vv = tensor(HybridState::vacuum(1), HybridState::vacuum(1));
    CHECK(vv.modes() == 2);
    CHECK(std::abs(overlap(vv, HybridState::vacuum(2)) - 1.0) < 1e-15);

    const auto big = tensor(single_photon_w(3), HybridState::coherent_product(std::vector<cplx>(3, 1.5)));
    CHECK(big.modes() == 6);
    CHECK(big.size() == 3);
  }

  TEST_CASE("fidelity") {
    std::mt19937_64 rng(11);
    const auto s = testing::random_coherent_state(rng, 3, 4, 1.0);
    CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fidelity(coherent(1.0), coherent(-1.0)) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
    CHECK(fidelity(coherent(1.0), coherent(-1.0)) == doctest::Approx(0.018316).epsilon(1e-5));
    CHECK_THROWS_AS(fidelity(coherent(1.0), superpose(coherent(1.0), coherent(1.0), 1.0, -1.0)), DegenerateStateError);
  }

  TEST_CASE("Hermitian symmetry, Cauchy-Schwarz, trivial superposition") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto a = testing::random_coherent_state(rng, 2, 3, 2.0).scaled(testing::random_cplx(rng, 2.0));
      const auto b = testing::random_coherent_state(rng, 2, 2, 2.0).scaled(testing::random_cplx(rng, 2.0));
      CHECK(std::abs(overlap(a, b) - std::conj(overlap(b, a))) < 1e-12);
      CHECK(std::norm(overlap(a, b)) <= overlap(a, a).real() * overlap(b, b).real() * (1.0 + 1e-12));
      CHECK(std::abs(norm(superpose(a, b, 1.0, 0.0)) - norm(a)) < 1e-12);
      CHECK(std::abs(overlap(a, a).imag()) < 1e-12);
    }
  }

  TEST_CASE("prune") {
    const auto twice = superpose(coherent(0.5), coherent(0.5), 0.5, 0.5);
    const auto merged = prune(twice, 0.0);
    REQUIRE(merged.size() == 1);
    CHECK(std::abs(merged.terms()[0].coefficient - 1.0) < 1e-15);

    // eps = 0 merges only bit-identical factors.
    const auto near = superpose(coherent(0.5), coherent(0.5 + 1e-15), 1.0, 1.0);
    CHECK(prune(near, 0.0).size() == 2);
    CHECK(prune(near).size() == 1);

    // Two Kerr-pi applications produce |a>, |-a>, |-a>, |a>; coinciding pairs merge.
    const auto k2 = apply_kerr_pi(apply_kerr_pi(coherent(1.2), 0), 0);
    CHECK(k2.size() <= 2);
    CHECK(norm(k2) == doctest::Approx(1.0).epsilon(1e-13));

    // Dropping negligible terms.
    const auto tiny = superpose(coherent(0.5), coherent(1.5), 1.0, 1e-14);
    CHECK(prune(tiny, 1e-12).size() == 1);
    CHECK(std::abs(overlap(normalize(prune(tiny, 1e-12)), normalize(tiny))) >= 1.0 - 1e-11);
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(HybridState(0, {}), DimensionError);
    CHECK_THROWS_AS(HybridState(2, {ProductTerm{1.0, {KetFactor::vacuum()}}}), DimensionError);
    CHECK_THROWS_AS(KetFactor::fock(kFockCap + 1), PhotonCapError);
    CHECK_THROWS(KetFactor::fock(-1));
  }

  TEST_CASE("mode permutation") {
    const auto s = HybridState::coherent_product(std::vector<cplx>{1.0, 2.0, 3.0});
    const std::array<std::size_t, 3> order{2, 0, 1};
    const auto p = permute_modes(s, order);
    CHECK(p.terms()[0].factors[0].amplitude == cplx{3.0, 0.0});
    CHECK(p.terms()[0].factors[1].amplitude == cplx{1.0, 0.0});
    const std::array<std::size_t, 3> bad{0, 0, 1};
    CHECK_THROWS(permute_modes(s, bad));
  }

  TEST_CASE("text round trip") {
    std::vector<ProductTerm> terms{
        {cplx{0.25, -1.0 / 3.0}, {KetFactor::coherent({0.1, 2.0 / 7.0}), KetFactor::fock(2)}},
        {cplx{-0.5, 0.0}, {KetFactor::coherent({-1e-300, 3.0}), KetFactor::vacuum()}}};
    const HybridState s(2, terms);
    const auto text = to_text(s);
    CHECK(text.find("| C:") != std::string::npos);
    CHECK(text.find("F:2") != std::string::npos);
    const auto back = from_text("# comment line\n" + text);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(back.terms()[i].coefficient == s.terms()[i].coefficient);
      for (std::size_t m = 0; m < 2; ++m) CHECK(back.terms()[i].factors[m] == s.terms()[i].factors[m]);
    }
    CHECK_THROWS_AS(from_text(""), ParseError);
    CHECK_THROWS_AS(from_text("1 0 | Q:1"), ParseError);
    CHECK_THROWS_AS(from_text("1 0 | C:1,0\n1 0 | C:1,0 C:0,0"), ParseError);
  }
}
