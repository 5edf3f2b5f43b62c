#include "ecs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ecs/errors.hpp"

namespace ecs {

void OptimizerConfig::validate() const {
  if (restarts < 0) throw std::invalid_argument("restarts must be non-negative");
  if (restarts == 0 && initial_points.empty()) throw std::invalid_argument("optimizer needs at least one start");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (!(step_init > 0.0)) throw std::invalid_argument("step_init must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw std::invalid_argument("step_shrink must lie in (0, 1)");
  if (!(grad_eps > 0.0)) throw std::invalid_argument("grad_eps must be positive");
  if (!(conv_tol > 0.0)) throw std::invalid_argument("conv_tol must be positive");
  if (!(search_radius > 0.0)) throw std::invalid_argument("search_radius must be positive");
}

double default_search_radius(double alpha) { return 1.0 / std::max(std::abs(alpha), 1.0); }

namespace {

double checked(const ParamObjective& f, std::span<const double> x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw ObjectiveError("objective returned a non-finite value");
  return v;
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<double> finite_difference_gradient(const ParamObjective& f, std::span<const double> x, double h) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = checked(f, probe);
    probe[i] = x[i] - h;
    const double down = checked(f, probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

AscentTrace ascend(const ParamObjective& f, std::vector<double> start, const OptimizerConfig& config,
                   bool record_history) {
  AscentTrace tr;
  tr.params = std::move(start);
  tr.value = checked(f, tr.params);
  if (record_history) tr.history.push_back(tr.value);

  const std::size_t dim = tr.params.size();
  std::vector<double> trial(dim);
  double step = config.step_init;
  const double max_step = 1e3 * config.step_init;
  int small_gains = 0;

  for (int it = 0; it < config.max_iters; ++it) {
    ++tr.iterations;
    const auto g = finite_difference_gradient(f, tr.params, config.grad_eps);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    if (gn == 0.0) {
      tr.converged = true;
      break;
    }

    double xnorm = 0.0;
    for (double v : tr.params) xnorm = std::max(xnorm, std::abs(v));
    const double min_step = 1e-12 * std::max(1.0, xnorm);

    bool accepted = false;
    double trial_value = tr.value;
    while (step >= min_step) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = tr.params[i] + step * g[i] / gn;
      trial_value = checked(f, trial);
      if (trial_value > tr.value) {
        accepted = true;
        break;
      }
      step *= config.step_shrink;
    }
    if (!accepted) {
      tr.converged = true;
      break;
    }

    const double gain = trial_value - tr.value;
    tr.params = trial;
    tr.value = trial_value;
    if (record_history) tr.history.push_back(tr.value);
    small_gains = gain < config.conv_tol ? small_gains + 1 : 0;
    if (small_gains >= 3) {
      tr.converged = true;
      break;
    }
    step = std::min(step / config.step_shrink, max_step);
  }
  return tr;
}

OptResult maximize(const ParamObjective& f, std::size_t dim, const OptimizerConfig& config) {
  config.validate();
  if (dim == 0) throw DimensionError("objective must have at least one parameter");
  for (const auto& p : config.initial_points)
    if (p.size() != dim) throw DimensionError("initial point has the wrong dimension");

  std::mt19937_64 rng(config.seed);
  OptResult best;
  bool have_best = false;
  const int total = static_cast<int>(config.initial_points.size()) + config.restarts;
  for (int k = 0; k < total; ++k) {
    std::vector<double> start;
    if (k < static_cast<int>(config.initial_points.size())) {
      start = config.initial_points[static_cast<std::size_t>(k)];
    } else {
      start.resize(dim);
      for (auto& v : start) v = config.search_radius * (2.0 * unit_uniform(rng) - 1.0);
    }
    const auto tr = ascend(f, std::move(start), config);
    best.iterations += tr.iterations;
    ++best.restarts_used;
    if (!have_best || tr.value > best.best_value) {
      have_best = true;
      best.best_value = tr.value;
      best.best_params = tr.params;
      best.converged = tr.converged;
    }
  }
  if (dim == BellSettings::kParams) best.best_settings = BellSettings::from_params(best.best_params);
  return best;
}

OptResult maximize(const BellObjective& f, const OptimizerConfig& config) {
  const ParamObjective wrapped = [&f](std::span<const double> p) { return f(BellSettings::from_params(p)); };
  return maximize(wrapped, BellSettings::kParams, config);
}

std::vector<SweepPoint> sweep_alpha(std::span<const double> alphas,
                                    const std::function<BellObjective(double)>& family,
                                    const OptimizerConfig& config, const SweepOptions& options) {
  for (double a : alphas)
    if (!std::isfinite(a)) throw std::invalid_argument("sweep amplitudes must be finite");
  if (!std::is_sorted(alphas.begin(), alphas.end()))
    throw std::invalid_argument("sweep amplitudes must be ascending");

  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    OptimizerConfig cfg = config;
    cfg.seed = config.seed + 0x9E3779B97F4A7C15ULL * i;
    if (options.scale_radius) cfg.search_radius = default_search_radius(alphas[i]);
    if (options.warm_start && !out.empty()) cfg.initial_points.push_back(out.back().result.best_params);
    out.push_back({alphas[i], maximize(family(alphas[i]), cfg)});
  }
  return out;
}

std::function<BellObjective(double)> parity_family(GhzSign sign) {
  return [sign](double alpha) -> BellObjective {
    return [alpha, sign](const BellSettings& s) { return bm_parity(alpha, sign, s); };
  };
}

std::function<BellObjective(double)> threshold_family(cplx c1, cplx c2) {
  return [c1, c2](double alpha) -> BellObjective {
    return [alpha, c1, c2](const BellSettings& s) { return bm_threshold(alpha, c1, c2, s); };
  };
}

}  // namespace ecs
