#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecs/optimize.hpp"
#include "json.hpp"

namespace ecs::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag values that CLI11 cannot catch on its own; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "re,im" or "re".
cplx parse_complex(const std::string& text);

/// Default sample points per figure when points == 0.
std::vector<double> figure_grid(const std::string& figure, int points = 0);

struct ReproRequest {
  std::string figure;
  GhzSign sign = GhzSign::Minus;
  OptimizerConfig config;
  int points = 0;
};

/// Header `alpha,bm_value,converged,restarts`, numbers as %.11e.
std::string repro_csv(const ReproRequest& req);

nlohmann::json generate_w_report(cplx gamma, double theta, bool displace);

struct OptimizeRequest {
  std::string family;  // "parity" or "threshold"
  double alpha = 0.0;
  GhzSign sign = GhzSign::Minus;
  /// Threshold family only; when unset the coefficients follow `sign`.
  std::optional<cplx> c1, c2;
  OptimizerConfig config;
};

nlohmann::json optimize_report(const OptimizeRequest& req);

/// {"suite", "tolerance", "checks": [...], "max_deviation", "pass"}.
nlohmann::json oracle_report(const std::string& suite, double tol);

/// Full command line: repro, generate-w, optimize, oracle-check, run-circuit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ecs::app
