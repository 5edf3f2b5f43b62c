#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecs/circuits.hpp"
#include "ecs/elements.hpp"
#include "ecs/errors.hpp"
#include "oracle_checks.hpp"

namespace ecs::app {

using nlohmann::json;

cplx parse_complex(const std::string& text) {
  std::istringstream is(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw UsageError("cannot parse complex number '" + text + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw UsageError("cannot parse complex number '" + text + "'");
  }
  std::string rest;
  if (is >> rest) throw UsageError("cannot parse complex number '" + text + "'");
  return {re, im};
}

namespace {

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  auto v = linspace(std::log10(lo), std::log10(hi), n);
  for (auto& x : v) x = std::pow(10.0, x);
  return v;
}

GhzSign parse_sign(const std::string& s) {
  if (s == "minus") return GhzSign::Minus;
  if (s == "plus") return GhzSign::Plus;
  throw UsageError("sign must be 'plus' or 'minus'");
}

json config_json(const OptimizerConfig& c) {
  return {{"restarts", c.restarts},       {"max_iters", c.max_iters},     {"step_init", c.step_init},
          {"step_shrink", c.step_shrink}, {"grad_eps", c.grad_eps},       {"conv_tol", c.conv_tol},
          {"seed", c.seed},               {"search_radius", c.search_radius}};
}

json settings_json(const BellSettings& s) {
  json u = json::array(), p = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    u.push_back(cplx_json(s.unprimed[i]));
    p.push_back(cplx_json(s.primed[i]));
  }
  return {{"unprimed", u}, {"primed", p}};
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void write_manifest(const std::string& out_path, const std::string& command, const json& params, const json& seed,
                    double seconds) {
  if (out_path.empty()) return;
  const json m{{"command", command},       {"parameters", params},       {"seed", seed},
               {"version", ECS_VERSION},   {"outputs", json::array({out_path})},
               {"duration_seconds", seconds}};
  std::ofstream f(out_path + ".manifest.json");
  if (!f) throw std::runtime_error("cannot write manifest next to '" + out_path + "'");
  f << m.dump(2) << "\n";
}

}  // namespace

std::vector<double> figure_grid(const std::string& figure, int points) {
  if (points < 0 || points == 1) throw UsageError("--points must be 0 (default grid) or at least 2");
  if (figure == "fig2a") return logspace(0.1, 10.0, points ? points : 21);
  if (figure == "fig2b") return logspace(1e-3, 0.1, points ? points : 11);
  if (figure == "fig3") return linspace(0.02, 1.0, points ? points : 50);
  if (figure == "fig5") return linspace(0.0, 4.0, points ? points : 81);
  throw UsageError("unknown figure '" + figure + "' (expected fig2a, fig2b, fig3 or fig5)");
}

std::string repro_csv(const ReproRequest& req) {
  const auto alphas = figure_grid(req.figure, req.points);
  std::ostringstream os;
  os << "alpha,bm_value,converged,restarts\n";
  if (req.figure == "fig5") {
    for (double a : alphas) os << fmt(a) << "," << fmt(bm_w_closed(a)) << ",true,\n";
    return os.str();
  }
  const auto family = req.figure == "fig3" ? threshold_family(1.0, -1.0) : parity_family(req.sign);
  // Row by row so that one failing amplitude does not abort the sweep.
  std::vector<double> prev;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    OptimizerConfig cfg = req.config;
    cfg.seed = req.config.seed + 0x9E3779B97F4A7C15ULL * i;
    cfg.search_radius = default_search_radius(alphas[i]);
    if (!prev.empty()) cfg.initial_points.push_back(prev);
    try {
      const auto r = maximize(family(alphas[i]), cfg);
      prev = r.best_params;
      os << fmt(alphas[i]) << "," << fmt(r.best_value) << "," << (r.converged ? "true" : "false") << ","
         << r.restarts_used << "\n";
    } catch (const std::exception&) {
      os << fmt(alphas[i]) << ",nan,false,0\n";
    }
  }
  return os.str();
}

json generate_w_report(cplx gamma, double theta, bool displace) {
  if (theta == 0.0) throw UsageError("--theta must be nonzero");
  const cplx alpha = w_effective_alpha(gamma, theta);
  const auto outcomes = run_w_circuit({gamma, theta, displace});
  json probs = json::object(), list = json::array();
  double sum = 0.0;
  for (const auto& o : outcomes) {
    const auto name = to_string(o.detector);
    probs[name] = o.probability;
    sum += o.probability;
    const auto cls = classify_w_outcome(o, alpha);
    list.push_back({{"detector", name},
                    {"probability", o.probability},
                    {"is_w_type", o.is_w_type},
                    {"sign_pattern", o.sign_pattern},
                    {"fidelity", cls.fidelity},
                    {"state", to_text(o.state)}});
  }
  return {{"gamma", cplx_json(gamma)},
          {"theta", theta},
          {"displace", displace},
          {"effective_alpha", cplx_json(alpha)},
          {"probabilities", probs},
          {"probability_sum", sum},
          {"outcomes", list}};
}

json optimize_report(const OptimizeRequest& req) {
  BellObjective f;
  json head{{"family", req.family}, {"alpha", req.alpha}};
  if (req.family == "parity") {
    if (req.c1 || req.c2) throw UsageError("--c1/--c2 apply to the threshold family only");
    f = parity_family(req.sign)(req.alpha);
    head["sign"] = req.sign == GhzSign::Minus ? "minus" : "plus";
  } else if (req.family == "threshold") {
    const cplx c1 = req.c1.value_or(1.0);
    const cplx c2 = req.c2.value_or(sign_value(req.sign));
    f = threshold_family(c1, c2)(req.alpha);
    head["c1"] = cplx_json(c1);
    head["c2"] = cplx_json(c2);
  } else {
    throw UsageError("family must be 'parity' or 'threshold'");
  }
  const auto r = maximize(f, req.config);
  head["config"] = config_json(req.config);
  head["best_value"] = r.best_value;
  head["best_params"] = r.best_params;
  head["best_settings"] = settings_json(r.best_settings);
  head["iterations"] = r.iterations;
  head["restarts_used"] = r.restarts_used;
  head["converged"] = r.converged;
  return head;
}

json oracle_report(const std::string& suite, double tol) {
  const auto checks = oracle_suite(suite, tol);
  json list = json::array();
  double worst = 0.0;
  bool ok = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    worst = std::max(worst, c.deviation);
    ok = ok && c.pass();
  }
  return {{"suite", suite}, {"tolerance", tol}, {"checks", list}, {"max_deviation", worst}, {"pass", ok}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Entangled coherent state simulator"};
  cli.require_subcommand(1);

  OptimizerConfig cfg;
  std::string out_path;
  auto add_optimizer_flags = [&cfg](CLI::App* sc) {
    sc->add_option("--restarts", cfg.restarts, "Random starts per optimization")->check(CLI::NonNegativeNumber);
    sc->add_option("--seed", cfg.seed, "Random seed");
    sc->add_option("--max-iters", cfg.max_iters, "Ascent iterations per start")->check(CLI::PositiveNumber);
  };

  auto* repro = cli.add_subcommand("repro", "Regenerate the data behind a figure as CSV");
  std::string figure, sign_text = "minus";
  int points = 0;
  repro->add_option("--figure", figure, "fig2a, fig2b, fig3 or fig5")->required();
  repro->add_option("--sign", sign_text, "GHZ sign for fig2a/fig2b: plus or minus");
  repro->add_option("--points", points, "Number of grid points (0 keeps the default grid)");
  repro->add_option("--out", out_path, "Output CSV path (stdout when omitted)");
  add_optimizer_flags(repro);

  auto* genw = cli.add_subcommand("generate-w", "Run the heralded W-state circuit");
  std::string gamma_text;
  double theta = 0.0;
  bool displace = false;
  genw->add_option("--gamma", gamma_text, "Coherent amplitude RE[,IM]")->required();
  genw->add_option("--theta", theta, "Cross-Kerr phase")->required();
  genw->add_flag("--displace", displace, "Apply the final displacement");
  genw->add_option("--out", out_path, "Output JSON path");

  auto* opt = cli.add_subcommand("optimize", "Maximize a Bell-Mermin function over displacements");
  std::string family, c1_text, c2_text, start_text;
  double alpha = 0.0;
  std::optional<double> radius;
  opt->add_option("--family", family, "parity or threshold")->required();
  opt->add_option("--alpha", alpha, "Coherent amplitude")->required();
  opt->add_option("--sign", sign_text, "plus or minus");
  opt->add_option("--c1", c1_text, "Threshold family coefficient RE[,IM]");
  opt->add_option("--c2", c2_text, "Threshold family coefficient RE[,IM]");
  opt->add_option("--radius", radius, "Search box half-width (default scales as 1/alpha)");
  opt->add_option("--start", start_text, "Comma-separated 12-parameter start point tried first");
  opt->add_option("--out", out_path, "Output JSON path");
  add_optimizer_flags(opt);

  auto* oracle = cli.add_subcommand("oracle-check", "Compare analytic results with the dense Fock oracle");
  std::string suite;
  double tol = 1e-8;
  oracle->add_option("--suite", suite, "states, elements, measure, circuits or all")->required();
  oracle->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
  oracle->add_option("--out", out_path, "Output JSON path");

  auto* runc = cli.add_subcommand("run-circuit", "Apply a circuit file to a state file");
  std::string circuit_path, state_path;
  runc->add_option("--circuit", circuit_path, "Circuit description")->required()->check(CLI::ExistingFile);
  runc->add_option("--state", state_path, "Input state in text form")->required()->check(CLI::ExistingFile);
  runc->add_option("--out", out_path, "Output state path");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    cli.exit(e, out, err);
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    if (*repro) {
      ReproRequest req{figure, parse_sign(sign_text), cfg, points};
      write_output(out_path, repro_csv(req), out);
      write_manifest(out_path, "repro",
                     {{"figure", figure}, {"sign", sign_text}, {"points", points}, {"config", config_json(cfg)}},
                     cfg.seed, elapsed());
      return kExitOk;
    }
    if (*genw) {
      const cplx gamma = parse_complex(gamma_text);
      const auto report = generate_w_report(gamma, theta, displace);
      write_output(out_path, report.dump(2) + "\n", out);
      write_manifest(out_path, "generate-w", {{"gamma", gamma_text}, {"theta", theta}, {"displace", displace}}, nullptr,
                     elapsed());
      return kExitOk;
    }
    if (*opt) {
      OptimizeRequest req;
      req.family = family;
      req.alpha = alpha;
      req.sign = parse_sign(sign_text);
      if (!c1_text.empty()) req.c1 = parse_complex(c1_text);
      if (!c2_text.empty()) req.c2 = parse_complex(c2_text);
      req.config = cfg;
      req.config.search_radius = radius.value_or(default_search_radius(alpha));
      if (!start_text.empty()) {
        std::vector<double> start;
        std::stringstream ss(start_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            start.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw UsageError("cannot parse --start entry '" + item + "'");
          }
        }
        if (start.size() != BellSettings::kParams) throw UsageError("--start needs 12 comma-separated numbers");
        req.config.initial_points.push_back(std::move(start));
      }
      try {
        req.config.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto report = optimize_report(req);
      write_output(out_path, report.dump(2) + "\n", out);
      write_manifest(out_path, "optimize", report["config"], cfg.seed, elapsed());
      return kExitOk;
    }
    if (*oracle) {
      std::vector<std::string> suites;
      if (suite == "all")
        suites.assign(kOracleSuites.begin(), kOracleSuites.end());
      else if (std::find(kOracleSuites.begin(), kOracleSuites.end(), suite) != kOracleSuites.end())
        suites.push_back(suite);
      else
        throw UsageError("unknown suite '" + suite + "'");
      json reports = json::array();
      bool ok = true;
      for (const auto& s : suites) {
        reports.push_back(oracle_report(s, tol));
        ok = ok && reports.back()["pass"].get<bool>();
      }
      const json doc = suites.size() == 1 ? reports[0] : json{{"suites", reports}, {"pass", ok}};
      write_output(out_path, doc.dump(2) + "\n", out);
      write_manifest(out_path, "oracle-check", {{"suite", suite}, {"tol", tol}}, nullptr, elapsed());
      return ok ? kExitOk : kExitCheckFailed;
    }
    if (*runc) {
      std::ifstream cf(circuit_path), sf(state_path);
      const auto circuit = parse_circuit(cf);
      const auto state = read_text(sf);
      write_output(out_path, to_text(apply_circuit(state, circuit)), out);
      write_manifest(out_path, "run-circuit", {{"circuit", circuit_path}, {"state", state_path}}, nullptr, elapsed());
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace ecs::app
