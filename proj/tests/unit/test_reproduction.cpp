// Optimized Bell values checked against fixed target windows. Kept in a suite of
// their own because some targets are not met (see README).

#include <cmath>

#include "doctest.h"
#include "ecs/bell.hpp"
#include "ecs/optimize.hpp"

using namespace ecs;

namespace {

OptimizerConfig local_from(std::vector<double> start, double alpha) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  cfg.search_radius = default_search_radius(alpha);
  cfg.initial_points.push_back(std::move(start));
  return cfg;
}

}  // namespace

TEST_SUITE("reproduction") {
  TEST_CASE("parity optimum at large amplitude from the reference setting") {
    const std::vector<double> p{0, -0.020, 0, -0.0519, 0.0519, 0, 0, 0.020, 0, -0.0259, 0, 0};
    const auto r = maximize(parity_family(GhzSign::Minus)(10.0), local_from(p, 10.0));
    CHECK(r.best_value == doctest::Approx(3.58).epsilon(0.05 / 3.58));
  }

  TEST_CASE("parity optimum at alpha 2 stays below 3.7") {
    for (auto sign : {GhzSign::Minus, GhzSign::Plus}) {
      OptimizerConfig cfg;
      cfg.search_radius = default_search_radius(2.0);
      const auto r = maximize(parity_family(sign)(2.0), cfg);
      CHECK(r.best_value > 2.0);
      CHECK(r.best_value < 3.7);
    }
  }

  TEST_CASE("threshold value at the reference setting") {
    BellSettings s;
    s.unprimed = {cplx{0.0, -0.371}, cplx{0.0, -0.371}, cplx{-0.295, -0.295}};
    s.primed = {cplx{0.173, 0.173}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    CHECK(bm_threshold(0.18, 1.0, -1.0, s) == doctest::Approx(2.5).epsilon(0.05 / 2.5));
  }

  TEST_CASE("threshold optimum near the peak and beyond the cutoff") {
    OptimizerConfig cfg;
    cfg.search_radius = default_search_radius(0.18);
    const auto peak = maximize(threshold_family(1.0, -1.0)(0.18), cfg);
    CHECK(peak.best_value >= 2.45);
    CHECK(peak.best_value <= 2.55);
    cfg.search_radius = default_search_radius(0.8);
    CHECK(maximize(threshold_family(1.0, -1.0)(0.8), cfg).best_value <= 2.0 + 1e-6);
  }

  TEST_CASE("threshold violation cutoff") {
    OptimizerConfig cfg;
    auto f = [&cfg](double a) {
      cfg.search_radius = default_search_radius(a);
      return maximize(threshold_family(1.0, -1.0)(a), cfg).best_value - 1e-6;
    };
    double cutoff = 0.0;
    CHECK_NOTHROW(cutoff = find_violation_onset(f, 0.3, 0.9, 1e-3));
    CHECK(cutoff == doctest::Approx(0.6).epsilon(0.1 / 0.6));
  }
}
