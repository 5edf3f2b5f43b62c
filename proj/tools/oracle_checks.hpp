#pragma once

#include <array>
#include <string>
#include <vector>

#include "ecs/states.hpp"

namespace ecs::app {

struct CheckResult {
  std::string name;
  double deviation;
  double tolerance;
  bool pass() const { return deviation <= tolerance; }
};

/// Runs one oracle-equivalence suite: "states", "elements", "measure" or "circuits".
/// Unitarity checks always use the 1e-9 bound; every other check uses `tol`.
std::vector<CheckResult> oracle_suite(const std::string& suite, double tol);

inline const std::array<std::string, 4> kOracleSuites{"states", "elements", "measure", "circuits"};

/// The heralded W circuit evolved densely in the truncated Fock basis.
struct DenseWBranches {
  std::array<double, 3> probabilities{};
  /// Fidelity of each dense heralded field state with the term-algebra outcome
  /// (before the final displacement). Zero for empty branches.
  std::array<double, 3> fidelities{};
};
DenseWBranches dense_w_circuit(cplx gamma, double theta);

}  // namespace ecs::app
