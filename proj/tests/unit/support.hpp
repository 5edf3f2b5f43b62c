#pragma once

#include <array>
#include <random>
#include <vector>

#include "ecs/states.hpp"

namespace ecs::testing {

inline cplx random_cplx(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// A few coherent product terms with random coefficients and amplitudes.
inline HybridState random_coherent_state(std::mt19937_64& rng, std::size_t modes, std::size_t terms, double scale) {
  std::vector<ProductTerm> ts;
  for (std::size_t i = 0; i < terms; ++i) {
    ProductTerm t{random_cplx(rng, 1.0), {}};
    for (std::size_t m = 0; m < modes; ++m) t.factors.push_back(KetFactor::coherent(random_cplx(rng, scale)));
    ts.push_back(std::move(t));
  }
  return normalize(HybridState(modes, std::move(ts)));
}

inline std::array<cplx, 3> random_betas(std::mt19937_64& rng, double scale) {
  return {random_cplx(rng, scale), random_cplx(rng, scale), random_cplx(rng, scale)};
}

}  // namespace ecs::testing
