#include "ecs/fockoracle.hpp"

#include <Eigen/Sparse>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "ecs/errors.hpp"

namespace ecs::oracle {

std::size_t adequate_dim(double a) {
  a = std::abs(a);
  return static_cast<std::size_t>(std::ceil(a * a + 6.0 * a + 10.0));
}

Truncation Truncation::uniform(std::size_t modes, std::size_t dim) { return {std::vector<std::size_t>(modes, dim)}; }

std::size_t Truncation::total() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

void Truncation::validate() const {
  if (dims.empty()) throw DimensionError("truncation needs at least one mode");
  double n = 1.0;
  for (auto d : dims) {
    if (d < 2) throw TruncationError("every mode needs dimension at least 2");
    n *= static_cast<double>(d);
  }
  if (n > static_cast<double>(kMaxAmplitudes))
    throw TruncationError("truncated space has " + std::to_string(static_cast<long long>(n)) +
                          " amplitudes, cap is " + std::to_string(kMaxAmplitudes));
}

namespace {

std::size_t required_dim(const HybridState& s, std::size_t m, double headroom) {
  std::size_t need = 2;
  for (const auto& t : s.terms()) {
    const auto& f = t.factors[m];
    const std::size_t d = f.is_coherent() ? adequate_dim(std::abs(f.amplitude) + headroom)
                                          : static_cast<std::size_t>(f.photons) + 1 +
                                                (headroom > 0.0 ? adequate_dim(headroom) : 0);
    need = std::max(need, d);
  }
  return need;
}

Vector coherent_column(cplx a, std::size_t dim) {
  Vector v(static_cast<Eigen::Index>(dim));
  v[0] = std::exp(-0.5 * std::norm(a));
  for (std::size_t n = 1; n < dim; ++n)
    v[static_cast<Eigen::Index>(n)] = v[static_cast<Eigen::Index>(n - 1)] * a / std::sqrt(static_cast<double>(n));
  return v;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Matrix annihilation(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix a = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix displacement(cplx beta, std::size_t dim) {
  const Matrix a = annihilation(dim);
  const Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
  return gen.exp();
}

Matrix diagonal(std::size_t dim, const std::function<cplx(std::size_t)>& f) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = f(static_cast<std::size_t>(n));
  return m;
}

Matrix kerr_pi(std::size_t dim) {
  // exp(-i pi n^2 / 2): 1 for even n, -i for odd n.
  return diagonal(dim, [](std::size_t n) { return n % 2 == 0 ? cplx{1.0, 0.0} : cplx{0.0, -1.0}; });
}

// exp of (theta/2)(e^{i phi} a^dag b - e^{-i phi} b^dag a) on the truncated
// two-mode space. The truncated generator still conserves na + nb, so it is
// exponentiated one total-photon block at a time.
Matrix beam_splitter(double theta, double phi, std::size_t da, std::size_t db) {
  const auto dim = static_cast<Eigen::Index>(da * db);
  Matrix u = Matrix::Zero(dim, dim);
  const cplx ph = std::polar(1.0, phi);
  const std::size_t max_total = da + db - 2;
  for (std::size_t total = 0; total <= max_total; ++total) {
    std::vector<std::size_t> na_list;
    for (std::size_t na = 0; na < da; ++na)
      if (total >= na && total - na < db) na_list.push_back(na);
    const auto k = static_cast<Eigen::Index>(na_list.size());
    Matrix gen = Matrix::Zero(k, k);
    for (Eigen::Index i = 0; i + 1 < k; ++i) {
      // |na, nb> -> |na + 1, nb - 1> under a^dag b.
      const double na = static_cast<double>(na_list[static_cast<std::size_t>(i)]);
      const double nb = static_cast<double>(total) - na;
      const double amp = std::sqrt((na + 1.0) * nb);
      gen(i + 1, i) = 0.5 * theta * ph * amp;
      gen(i, i + 1) = -0.5 * theta * std::conj(ph) * amp;
    }
    const Matrix blk = gen.exp();
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const auto ni = na_list[static_cast<std::size_t>(i)];
        const auto nj = na_list[static_cast<std::size_t>(j)];
        u(static_cast<Eigen::Index>(ni * db + (total - ni)), static_cast<Eigen::Index>(nj * db + (total - nj))) =
            blk(i, j);
      }
  }
  return u;
}

void require_dims(const Truncation& t, std::size_t n) {
  if (t.dims.size() != n)
    throw DimensionError("operator acts on " + std::to_string(n) + " mode(s), truncation lists " +
                         std::to_string(t.dims.size()));
  t.validate();
}

}  // namespace

Truncation adequate_truncation(const HybridState& s, double headroom) {
  Truncation t;
  for (std::size_t m = 0; m < s.modes(); ++m) t.dims.push_back(required_dim(s, m, headroom));
  t.validate();
  return t;
}

bool is_adequate(const HybridState& s, const Truncation& t) {
  if (t.dims.size() != s.modes()) return false;
  for (std::size_t m = 0; m < s.modes(); ++m)
    if (t.dims[m] < required_dim(s, m, 0.0)) return false;
  return true;
}

FockVector to_fock(const HybridState& s, const Truncation& t) {
  if (t.dims.size() != s.modes()) throw DimensionError("truncation and state disagree on mode count");
  t.validate();
  if (!is_adequate(s, t)) throw TruncationError("truncation is too small for the state's amplitudes");
  FockVector out{Vector::Zero(static_cast<Eigen::Index>(t.total())), t};
  for (const auto& term : s.terms()) {
    Vector acc = Vector::Ones(1);
    for (std::size_t m = 0; m < s.modes(); ++m) {
      const auto& f = term.factors[m];
      Vector col;
      if (f.is_coherent()) {
        col = coherent_column(f.amplitude, t.dims[m]);
      } else {
        col = Vector::Zero(static_cast<Eigen::Index>(t.dims[m]));
        col[f.photons] = 1.0;
      }
      acc = kron(acc, col);
    }
    out.amplitudes += term.coefficient * acc;
  }
  return out;
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (a.truncation.dims != b.truncation.dims) throw DimensionError("Fock vectors use different truncations");
  return a.amplitudes.dot(b.amplitudes);  // conjugates the left argument
}

std::size_t arity(const OperatorKind& k) {
  return std::holds_alternative<op::BeamSplitter>(k) || std::holds_alternative<op::CrossKerr>(k) ? 2 : 1;
}

bool is_unitary_kind(const OperatorKind& k) {
  return !std::holds_alternative<op::ParityDisplaced>(k) && !std::holds_alternative<op::ThresholdDisplaced>(k);
}

Matrix operator_matrix(const OperatorKind& k, const Truncation& t) {
  require_dims(t, arity(k));
  const std::size_t d0 = t.dims[0];
  return std::visit(
      [&](const auto& o) -> Matrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, op::Displacement>) {
          return displacement(o.beta, d0);
        } else if constexpr (std::is_same_v<T, op::BeamSplitter>) {
          return beam_splitter(o.theta, o.phi, d0, t.dims[1]);
        } else if constexpr (std::is_same_v<T, op::ParityDisplaced>) {
          const Matrix d = displacement(o.beta, d0);
          const Matrix p = diagonal(d0, [](std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; });
          return d * p * d.adjoint();
        } else if constexpr (std::is_same_v<T, op::ThresholdDisplaced>) {
          const Matrix d = displacement(o.beta, d0);
          const Matrix a = diagonal(d0, [](std::size_t n) { return n == 0 ? 1.0 : -1.0; });
          return d.adjoint() * a * d;
        } else if constexpr (std::is_same_v<T, op::KerrPi>) {
          return kerr_pi(d0);
        } else if constexpr (std::is_same_v<T, op::CrossKerr>) {
          const std::size_t d1 = t.dims[1];
          return diagonal(d0 * d1, [&](std::size_t i) {
            return std::polar(1.0, o.theta * static_cast<double>(i / d1) * static_cast<double>(i % d1));
          });
        } else if constexpr (std::is_same_v<T, op::PhaseShift>) {
          return diagonal(d0, [&](std::size_t n) { return std::polar(1.0, o.phi * static_cast<double>(n)); });
        } else {
          return displacement(0.5 * o.alpha, d0) * kerr_pi(d0) * displacement(-0.5 * o.alpha, d0);
        }
      },
      k);
}

double unitarity_deviation(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity check needs a square matrix");
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

FockVector apply(const Matrix& m, const FockVector& v, std::span<const std::size_t> modes) {
  const auto& dims = v.truncation.dims;
  std::vector<std::size_t> strides(dims.size());
  std::size_t stride = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= dims[i];
  }
  std::size_t local = 1;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] >= dims.size()) throw DimensionError("mode index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (modes[j] == modes[i]) throw DimensionError("repeated mode in operator placement");
    local *= dims[modes[i]];
  }
  if (static_cast<std::size_t>(m.rows()) != local || m.cols() != m.rows())
    throw DimensionError("operator size does not match the selected modes");

  // Offsets of the local basis states, first listed mode slowest.
  std::vector<std::size_t> offsets(local, 0);
  for (std::size_t k = 0; k < local; ++k) {
    std::size_t rem = k;
    for (std::size_t i = modes.size(); i-- > 0;) {
      const std::size_t d = dims[modes[i]];
      offsets[k] += (rem % d) * strides[modes[i]];
      rem /= d;
    }
  }
  const Eigen::SparseMatrix<cplx> sm = m.sparseView();

  FockVector out{Vector::Zero(v.amplitudes.size()), v.truncation};
  Vector x(static_cast<Eigen::Index>(local));
  Vector y;
  const std::size_t n = v.truncation.total();
  for (std::size_t base = 0; base < n; ++base) {
    bool is_base = true;
    for (auto md : modes) is_base = is_base && (base / strides[md]) % dims[md] == 0;
    if (!is_base) continue;
    for (std::size_t k = 0; k < local; ++k)
      x[static_cast<Eigen::Index>(k)] = v.amplitudes[static_cast<Eigen::Index>(base + offsets[k])];
    y = sm * x;
    for (std::size_t k = 0; k < local; ++k)
      out.amplitudes[static_cast<Eigen::Index>(base + offsets[k])] = y[static_cast<Eigen::Index>(k)];
  }
  return out;
}

FockVector apply(const OperatorKind& k, const FockVector& v, std::span<const std::size_t> modes) {
  if (modes.size() != arity(k)) throw DimensionError("operator placement lists the wrong number of modes");
  Truncation t;
  for (auto md : modes) {
    if (md >= v.truncation.dims.size()) throw DimensionError("mode index out of range");
    t.dims.push_back(v.truncation.dims[md]);
  }
  return apply(operator_matrix(k, t), v, modes);
}

cplx expect(std::span<const Matrix> per_mode, const FockVector& v) {
  if (per_mode.size() != v.truncation.dims.size()) throw DimensionError("need one operator per mode");
  const double nrm = v.squared_norm();
  if (!(nrm > 0.0)) throw DegenerateStateError("expectation in a zero vector");
  FockVector w = v;
  for (std::size_t m = 0; m < per_mode.size(); ++m) {
    const std::array<std::size_t, 1> mode{m};
    w = apply(per_mode[m], w, mode);
  }
  return inner(v, w) / nrm;
}

FockVector project_threshold(const FockVector& v, std::size_t mode, bool click) {
  const auto& dims = v.truncation.dims;
  if (mode >= dims.size()) throw DimensionError("mode index out of range");
  std::size_t stride = 1;
  for (std::size_t i = dims.size(); i-- > mode + 1;) stride *= dims[i];
  FockVector out = v;
  for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i) {
    const bool vacuum = (static_cast<std::size_t>(i) / stride) % dims[mode] == 0;
    if (vacuum == click) out.amplitudes[i] = 0.0;
  }
  return out;
}

}  // namespace ecs::oracle
