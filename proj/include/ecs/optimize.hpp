#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ecs/bell.hpp"

namespace ecs {

/// Multi-start steepest-ascent settings. The defaults reach the Bell-function
/// optima in seconds per amplitude.
struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 2000;
  double step_init = 0.1;
  double step_shrink = 0.5;
  /// Half-width of the central finite difference.
  double grad_eps = 1e-6;
  /// Three consecutive accepted steps improving by less than this end a run.
  double conv_tol = 1e-9;
  std::uint64_t seed = 20060101;
  /// Random starts are drawn uniformly from [-search_radius, search_radius]^dim.
  double search_radius = 1.0;
  /// Deterministic starting points tried before the random ones (warm starts,
  /// local re-optimization). Each must have the objective's dimension.
  std::vector<std::vector<double>> initial_points;

  void validate() const;
};

/// 1 / max(|alpha|, 1). Larger boxes at small alpha put almost every start on
/// the flat region where all displaced detectors give -1.
double default_search_radius(double alpha);

struct OptResult {
  double best_value = 0.0;
  std::vector<double> best_params;
  BellSettings best_settings;
  /// Ascent iterations summed over all starts.
  long iterations = 0;
  int restarts_used = 0;
  /// Whether the start that produced best_value met the convergence test.
  bool converged = false;
};

using ParamObjective = std::function<double(std::span<const double>)>;
using BellObjective = std::function<double(const BellSettings&)>;

/// Single steepest-ascent run from `start`; exposed for tests of the ascent itself.
struct AscentTrace {
  std::vector<double> params;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Objective after each accepted step, starting with the initial value.
  std::vector<double> history;
};
AscentTrace ascend(const ParamObjective& f, std::vector<double> start, const OptimizerConfig& config,
                   bool record_history = false);

/// Central-difference gradient with half-width h.
std::vector<double> finite_difference_gradient(const ParamObjective& f, std::span<const double> x, double h);

/// Maximizes a function of `dim` real parameters. best_settings is filled when dim == 12.
OptResult maximize(const ParamObjective& f, std::size_t dim, const OptimizerConfig& config);
OptResult maximize(const BellObjective& f, const OptimizerConfig& config);

struct SweepPoint {
  double alpha;
  OptResult result;
};

struct SweepOptions {
  /// Seed each alpha with the previous optimum (in addition to random starts).
  bool warm_start = true;
  /// Replace config.search_radius by default_search_radius(alpha) per point.
  bool scale_radius = true;
};

std::vector<SweepPoint> sweep_alpha(std::span<const double> alphas,
                                    const std::function<BellObjective(double)>& family,
                                    const OptimizerConfig& config, const SweepOptions& options = {});

/// Objective families used by the sweeps and the CLI.
std::function<BellObjective(double)> parity_family(GhzSign sign);
std::function<BellObjective(double)> threshold_family(cplx c1, cplx c2);

}  // namespace ecs
