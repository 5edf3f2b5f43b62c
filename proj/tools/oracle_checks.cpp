#include "oracle_checks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ecs/bell.hpp"
#include "ecs/circuits.hpp"
#include "ecs/elements.hpp"
#include "ecs/fockoracle.hpp"
#include "ecs/measure.hpp"

namespace ecs::app {

namespace o = ecs::oracle;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityBound = 1e-9;

cplx random_cplx(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

HybridState random_state(std::mt19937_64& rng, std::size_t modes, std::size_t terms, double scale) {
  std::vector<ProductTerm> ts;
  for (std::size_t i = 0; i < terms; ++i) {
    ProductTerm t{random_cplx(rng, 1.0), {}};
    for (std::size_t m = 0; m < modes; ++m) t.factors.push_back(KetFactor::coherent(random_cplx(rng, scale)));
    ts.push_back(std::move(t));
  }
  return normalize(HybridState(modes, std::move(ts)));
}

double max_abs_diff(const o::FockVector& a, const o::FockVector& b) {
  return (a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff();
}

double dense_fidelity(const o::Vector& a, const o::Vector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

double bs_theta(double r) { return 2.0 * std::asin(r); }

std::vector<CheckResult> states_suite(double tol) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(101);
  double dev = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto a = random_state(rng, 2, 3, 2.0 / std::sqrt(2.0));
    const auto b = random_state(rng, 2, 2, 2.0 / std::sqrt(2.0));
    const auto t = o::adequate_truncation(superpose(a, b, 1.0, 1.0));
    dev = std::max(dev, std::abs(overlap(a, b) - o::inner(o::to_fock(a, t), o::to_fock(b, t))));
  }
  out.push_back({"overlap random coherent pairs", dev, tol});

  const std::vector<ProductTerm> mixed_terms{
      {0.6, {KetFactor::fock(1), KetFactor::coherent({1.2, -0.4})}},
      {cplx{0.0, 0.8}, {KetFactor::coherent(0.5), KetFactor::fock(2)}}};
  const HybridState mixed(2, mixed_terms);
  const auto coh = HybridState::coherent_product(std::vector<cplx>{cplx{0.3, 0.2}, cplx{-1.0, 0.5}});
  const auto tm = o::adequate_truncation(superpose(mixed, coh, 1.0, 1.0));
  out.push_back({"overlap mixed Fock and coherent",
                 std::abs(overlap(mixed, coh) - o::inner(o::to_fock(mixed, tm), o::to_fock(coh, tm))), tol});

  dev = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double s : {1.0, -1.0}) {
      const auto ghz = ghz_reference(a, 1.0, s);
      dev = std::max(dev, std::abs(o::to_fock(ghz, o::adequate_truncation(ghz)).squared_norm() - 1.0));
    }
  }
  out.push_back({"GHZ norm after Fock expansion", dev, tol});

  const auto w = single_photon_w(3);
  const auto vw = o::to_fock(w, o::Truncation::uniform(3, 2));
  dev = 0.0;
  for (int k = 0; k < 8; ++k) {
    const bool one_photon = k == 1 || k == 2 || k == 4;
    dev = std::max(dev, std::abs(std::abs(vw.amplitudes[k]) - (one_photon ? 1.0 / std::sqrt(3.0) : 0.0)));
  }
  out.push_back({"single-photon W amplitudes", dev, tol});
  return out;
}

std::vector<CheckResult> elements_suite(double tol) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(202);
  double bs = 0.0, ps = 0.0, d = 0.0, k = 0.0, ux = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto s = random_state(rng, 2, 2, 1.0);
    const auto t = o::adequate_truncation(s, 1.0);
    const auto v = o::to_fock(s, t);
    const std::array<std::size_t, 2> pair{0, 1};
    const std::array<std::size_t, 1> m1{1};
    const double th = 0.3 + 0.5 * i, ph = 0.9 * i;
    const cplx beta = random_cplx(rng, 0.7);
    bs = std::max(bs, max_abs_diff(o::to_fock(apply_beam_splitter(s, {th, ph, 0, 1}), t),
                                   o::apply(o::op::BeamSplitter{th, ph}, v, pair)));
    ps = std::max(ps, max_abs_diff(o::to_fock(apply_phase_shifter(s, 1, th), t), o::apply(o::op::PhaseShift{th}, v, m1)));
    d = std::max(d, max_abs_diff(o::to_fock(apply_displacement(s, {1, beta}), t),
                                 o::apply(o::op::Displacement{beta}, v, m1)));
    k = std::max(k, max_abs_diff(o::to_fock(apply_kerr_pi(s, 1), t), o::apply(o::op::KerrPi{}, v, m1)));
    ux = std::max(ux, max_abs_diff(o::to_fock(apply_ux(s, {1, beta}), t), o::apply(o::op::UX{beta}, v, m1)));
  }
  out.push_back({"beam splitter action", bs, tol});
  out.push_back({"phase shifter action", ps, tol});
  out.push_back({"displacement action", d, tol});
  out.push_back({"Kerr pi action", k, tol});
  out.push_back({"U_X action", ux, tol});

  const std::vector<ProductTerm> terms{{0.6, {KetFactor::fock(0), KetFactor::coherent({1.1, 0.3})}},
                                       {0.8, {KetFactor::fock(1), KetFactor::coherent({-0.2, 0.9})}}};
  const HybridState ck_in(2, terms);
  const auto tck = o::adequate_truncation(ck_in);
  const std::array<std::size_t, 2> pair{0, 1};
  out.push_back({"cross-Kerr action",
                 max_abs_diff(o::to_fock(apply_cross_kerr(ck_in, {0, 1, 0.7}), tck),
                              o::apply(o::op::CrossKerr{0.7}, o::to_fock(ck_in, tck), pair)),
                 tol});

  const std::vector<ProductTerm> photons{{1.0, {KetFactor::fock(1), KetFactor::fock(0)}},
                                         {cplx{0.0, 1.0}, {KetFactor::fock(1), KetFactor::fock(2)}}};
  const HybridState fock_in(2, photons);
  const o::Truncation tf{{5, 5}};
  const double fth = bs_theta(std::sqrt(2.0 / 5.0));
  out.push_back({"beam splitter on Fock pairs",
                 max_abs_diff(o::to_fock(apply_beam_splitter(fock_in, {fth, kPi, 0, 1}), tf),
                              o::apply(o::op::BeamSplitter{fth, kPi}, o::to_fock(fock_in, tf), pair)),
                 tol});

  const o::Truncation one{{30}}, two{{12, 14}};
  const std::vector<std::pair<std::string, o::OperatorKind>> kinds{
      {"displacement", o::op::Displacement{{0.8, -0.6}}}, {"phase shifter", o::op::PhaseShift{1.3}},
      {"Kerr pi", o::op::KerrPi{}},                        {"U_X", o::op::UX{{1.5, 0.2}}},
      {"beam splitter", o::op::BeamSplitter{1.1, 2.0}},    {"cross-Kerr", o::op::CrossKerr{0.4}}};
  for (const auto& [name, kind] : kinds) {
    const auto& t = o::arity(kind) == 2 ? two : one;
    out.push_back({"unitarity " + name, o::unitarity_deviation(o::operator_matrix(kind, t)), kUnitarityBound});
  }
  return out;
}

std::vector<CheckResult> measure_suite(double tol) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(303);
  double par = 0.0, thr = 0.0;
  for (double alpha : {0.3, 1.0, 2.0}) {
    for (double sign : {1.0, -1.0}) {
      const auto ghz = ghz_reference(alpha, 1.0, sign);
      const std::array<cplx, 3> b{random_cplx(rng, 0.5), random_cplx(rng, 0.5), random_cplx(rng, 0.5)};
      const auto t = o::adequate_truncation(ghz, 1.0);
      const auto v = o::to_fock(ghz, t);
      std::vector<o::Matrix> mp, mt;
      for (std::size_t m = 0; m < 3; ++m) {
        mp.push_back(o::operator_matrix(o::op::ParityDisplaced{b[m]}, {{t.dims[m]}}));
        mt.push_back(o::operator_matrix(o::op::ThresholdDisplaced{b[m]}, {{t.dims[m]}}));
      }
      par = std::max(par, std::abs(o::expect(mp, v).real() - expect_displaced_parity(ghz, b)));
      thr = std::max(thr, std::abs(o::expect(mt, v).real() - expect_displaced_threshold(ghz, b)));
      const GhzSign gs = sign > 0 ? GhzSign::Plus : GhzSign::Minus;
      const double closed = std::pow(kPi, 3) / 8.0 * wigner_ghz(b, alpha, gs);
      par = std::max(par, std::abs(o::expect(mp, v).real() - closed));
    }
  }
  out.push_back({"displaced parity on GHZ states", par, tol});
  out.push_back({"displaced threshold on GHZ states", thr, tol});

  double thr_closed = 0.0;
  for (double alpha : {0.18, 0.5, 1.5}) {
    const std::array<cplx, 3> b{random_cplx(rng, 0.6), random_cplx(rng, 0.6), random_cplx(rng, 0.6)};
    const auto ghz = ghz_reference(alpha, 1.0, -1.0);
    const auto t = o::adequate_truncation(ghz, 1.0);
    std::vector<o::Matrix> mt;
    for (std::size_t m = 0; m < 3; ++m) mt.push_back(o::operator_matrix(o::op::ThresholdDisplaced{b[m]}, {{t.dims[m]}}));
    thr_closed = std::max(thr_closed, std::abs(o::expect(mt, o::to_fock(ghz, t)).real() -
                                               threshold_correlation_ghz(alpha, 1.0, -1.0, b)));
  }
  out.push_back({"threshold closed form", thr_closed, tol});

  double tau = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto w = w_logical(alpha);
    const auto t = o::adequate_truncation(w, 1.0);
    const auto v = o::to_fock(w, t);
    const o::Truncation tm{{t.dims[0]}};
    const o::Matrix a0 = o::operator_matrix(o::op::ThresholdDisplaced{0.0}, tm);
    const o::Matrix u = o::operator_matrix(o::op::UX{alpha}, tm);
    const o::Matrix a1 = u.adjoint() * a0 * u;
    for (int k = 0; k < 8; ++k) {
      const std::array<int, 3> taus{(k >> 2) & 1, (k >> 1) & 1, k & 1};
      std::vector<o::Matrix> ms;
      for (int x : taus) ms.push_back(x == 0 ? a0 : a1);
      tau = std::max(tau, std::abs(o::expect(ms, v).real() - expect_a_tau(w, taus, alpha)));
    }
  }
  out.push_back({"logical observable A(tau)", tau, tol});

  const auto w1 = single_photon_w(3);
  const auto t1 = o::Truncation::uniform(3, 14);
  const auto v1 = o::to_fock(w1, t1);
  double spw = 0.0;
  for (int i = 0; i < 3; ++i) {
    const std::array<cplx, 3> b{random_cplx(rng, 0.5), random_cplx(rng, 0.5), random_cplx(rng, 0.5)};
    std::vector<o::Matrix> mp, mt;
    for (std::size_t m = 0; m < 3; ++m) {
      mp.push_back(o::operator_matrix(o::op::ParityDisplaced{b[m]}, {{14}}));
      mt.push_back(o::operator_matrix(o::op::ThresholdDisplaced{b[m]}, {{14}}));
    }
    spw = std::max(spw, std::abs(o::expect(mp, v1).real() - expect_displaced_parity(w1, b)));
    spw = std::max(spw, std::abs(o::expect(mt, v1).real() - expect_displaced_threshold(w1, b)));
  }
  out.push_back({"single-photon W expectations", spw, tol});
  return out;
}

std::vector<CheckResult> circuits_suite(double tol) {
  std::vector<CheckResult> out;
  double ghz = 0.0;
  for (double alpha : {0.5, 1.0}) {
    for (auto sign : {GhzSign::Plus, GhzSign::Minus}) {
      const auto input = tensor(css(std::sqrt(3.0) * alpha, 1.0, sign_value(sign)), HybridState::vacuum(2));
      // Every mode gets the input's room plus headroom: a splitter on a truncated pair
      // mixes the cut-off photon-number blocks, which the bare rule leaves at 1e-8.
      const auto t = o::Truncation::uniform(3, o::adequate_dim(std::sqrt(3.0) * alpha + 1.0));
      auto v = o::to_fock(input, t);
      const std::array<std::size_t, 2> p01{0, 1}, p02{0, 2};
      v = o::apply(o::op::BeamSplitter{bs_theta(1.0 / std::sqrt(3.0)), kPi}, v, p01);
      v = o::apply(o::op::BeamSplitter{bs_theta(1.0 / std::sqrt(2.0)), kPi}, v, p02);
      ghz = std::max(ghz, max_abs_diff(o::to_fock(generate_ghz(alpha, sign, 3), t), v));
    }
  }
  out.push_back({"GHZ beam-splitter chain", ghz, tol});

  for (const auto& [gamma, theta] : {std::pair{1.5, 0.8}, std::pair{2.0, 0.5}}) {
    const auto dense = dense_w_circuit(gamma, theta);
    const auto exact = run_w_circuit({gamma, theta, false});
    double pdev = 0.0, fdev = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
      pdev = std::max(pdev, std::abs(dense.probabilities[d] - exact[d].probability));
      fdev = std::max(fdev, std::abs(1.0 - dense.fidelities[d]));
    }
    char label[64];
    std::snprintf(label, sizeof label, "gamma=%.2f theta=%.2f", gamma, theta);
    out.push_back({std::string("W branch probabilities ") + label, pdev, tol});
    out.push_back({std::string("W heralded states ") + label, fdev, tol});
  }
  return out;
}

}  // namespace

DenseWBranches dense_w_circuit(cplx gamma, double theta) {
  const std::size_t field_dim = o::adequate_dim(std::sqrt(3.0) * std::abs(gamma));
  const o::Truncation t{{2, 2, 2, field_dim, field_dim, field_dim}};
  const std::vector<ProductTerm> init{{1.0,
                                       {KetFactor::fock(0), KetFactor::fock(0), KetFactor::fock(1),
                                        KetFactor::coherent(std::sqrt(3.0) * gamma), KetFactor::coherent(0.0),
                                        KetFactor::coherent(0.0)}}};
  auto v = o::to_fock(HybridState(6, init), t);

  auto bs = [&v](double r, std::size_t a, std::size_t b) {
    const std::array<std::size_t, 2> modes{a, b};
    v = o::apply(o::op::BeamSplitter{bs_theta(r), kPi}, v, modes);
  };
  bs(std::sqrt(2.0 / 5.0), 2, 0);
  bs(std::sqrt(2.0 / 3.0), 2, 1);
  bs(1.0 / std::sqrt(3.0), 3, 4);
  bs(1.0 / std::sqrt(2.0), 3, 5);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::array<std::size_t, 2> modes{k, k + 3};
    v = o::apply(o::op::CrossKerr{theta}, v, modes);
  }
  bs(1.0 / std::sqrt(2.0), 0, 1);
  bs(1.0 / std::sqrt(2.0), 2, 1);

  const auto exact = run_w_circuit({gamma, theta, false});
  const o::Truncation tf{{field_dim, field_dim, field_dim}};
  const auto block = static_cast<Eigen::Index>(field_dim * field_dim * field_dim);
  DenseWBranches out;
  for (std::size_t d = 0; d < 3; ++d) {
    auto proj = v;
    for (std::size_t m = 0; m < 3; ++m) proj = o::project_threshold(proj, m, m == d);
    out.probabilities[d] = proj.squared_norm();
    if (exact[d].probability <= 0.0 || out.probabilities[d] <= 0.0) continue;
    // One photon in total, so the clicked detector holds exactly |1> and the
    // heralded field is the block with that photon configuration.
    const Eigen::Index photon_index = Eigen::Index{1} << (2 - d);
    const o::Vector field = proj.amplitudes.segment(photon_index * block, block);
    out.fidelities[d] = dense_fidelity(field, o::to_fock(exact[d].state, tf).amplitudes);
  }
  return out;
}

std::vector<CheckResult> oracle_suite(const std::string& suite, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (suite == "states") return states_suite(tol);
  if (suite == "elements") return elements_suite(tol);
  if (suite == "measure") return measure_suite(tol);
  if (suite == "circuits") return circuits_suite(tol);
  throw std::invalid_argument("unknown oracle suite '" + suite + "'");
}

}  // namespace ecs::app
