#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecs/bell.hpp"
#include "ecs/circuits.hpp"
#include "ecs/optimize.hpp"

namespace py = pybind11;
using namespace ecs;

namespace {

BellSettings settings_from(const std::vector<double>& p) { return BellSettings::from_params(p); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entangled coherent state simulator";

  py::enum_<GhzSign>(m, "GhzSign").value("Plus", GhzSign::Plus).value("Minus", GhzSign::Minus);

  m.def("bm_w_closed", &bm_w_closed, py::arg("alpha"));
  m.def("bm_w_generic", [](double a) { return bm_w_generic(a, {}); }, py::arg("alpha"));
  m.def(
      "bm_parity", [](cplx a, GhzSign s, const std::vector<double>& p) { return bm_parity(a, s, settings_from(p)); },
      py::arg("alpha"), py::arg("sign"), py::arg("params"));
  m.def(
      "bm_threshold",
      [](cplx a, cplx c1, cplx c2, const std::vector<double>& p) { return bm_threshold(a, c1, c2, settings_from(p)); },
      py::arg("alpha"), py::arg("c1"), py::arg("c2"), py::arg("params"));
  m.def("w_effective_alpha", &w_effective_alpha, py::arg("gamma"), py::arg("theta"));

  m.def(
      "w_branch_probabilities",
      [](cplx gamma, double theta) {
        py::dict d;
        for (const auto& o : run_w_circuit({gamma, theta, false})) d[py::str(to_string(o.detector))] = o.probability;
        return d;
      },
      py::arg("gamma"), py::arg("theta"));

  m.def(
      "ghz_fidelity",
      [](double alpha, GhzSign sign) {
        return fidelity(generate_ghz(alpha, sign, 3), ghz_reference(alpha, 1.0, sign_value(sign)));
      },
      py::arg("alpha"), py::arg("sign"));

  m.def(
      "maximize_bell",
      [](const std::string& family, double alpha, GhzSign sign, int restarts, std::uint64_t seed) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.search_radius = default_search_radius(alpha);
        if (family != "parity" && family != "threshold") throw py::value_error("family must be parity or threshold");
        const auto fam = family == "parity" ? parity_family(sign) : threshold_family(1.0, sign_value(sign));
        OptResult r;
        {
          py::gil_scoped_release release;
          r = maximize(fam(alpha), cfg);
        }
        return py::make_tuple(r.best_value, r.best_params);
      },
      py::arg("family"), py::arg("alpha"), py::arg("sign") = GhzSign::Minus, py::arg("restarts") = 64,
      py::arg("seed") = OptimizerConfig{}.seed);
}
