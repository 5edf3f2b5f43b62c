#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ecs/states.hpp"

// Brute-force dense representation in a truncated photon-number basis. Nothing
// here shares code with the coherent-state algebra it is used to check.
namespace ecs::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxAmplitudes = 10'000'000;

/// Smallest per-mode dimension that keeps the Poisson tail of |a| negligible:
/// ceil(|a|^2 + 6|a| + 10).
std::size_t adequate_dim(double abs_amplitude);

struct Truncation {
  std::vector<std::size_t> dims;

  static Truncation uniform(std::size_t modes, std::size_t dim);
  std::size_t total() const;
  /// Each dim >= 2 and the product within kMaxAmplitudes.
  void validate() const;
};

/// Per-mode dimensions adequate for every amplitude of `s` grown by `headroom`
/// (room for displacements applied later), and for every Fock factor.
Truncation adequate_truncation(const HybridState& s, double headroom = 0.0);
bool is_adequate(const HybridState& s, const Truncation& t);

/// Amplitudes in row-major order: mode 0 is the slowest index.
struct FockVector {
  Vector amplitudes;
  Truncation truncation;

  double squared_norm() const { return amplitudes.squaredNorm(); }
};

FockVector to_fock(const HybridState& s, const Truncation& t);
cplx inner(const FockVector& a, const FockVector& b);

namespace op {
struct Displacement {
  cplx beta;
};
struct BeamSplitter {
  double theta;
  double phi;
};
struct ParityDisplaced {
  cplx beta;
};
struct ThresholdDisplaced {
  cplx beta;
};
struct KerrPi {};
/// Acts on (control, target).
struct CrossKerr {
  double theta;
};
struct PhaseShift {
  double phi;
};
/// D(a/2) KerrPi D(-a/2).
struct UX {
  cplx alpha;
};
}  // namespace op

using OperatorKind = std::variant<op::Displacement, op::BeamSplitter, op::ParityDisplaced, op::ThresholdDisplaced,
                                  op::KerrPi, op::CrossKerr, op::PhaseShift, op::UX>;

std::size_t arity(const OperatorKind& k);
bool is_unitary_kind(const OperatorKind& k);

/// Dense matrix on the modes described by `t` (one dim per operator mode).
Matrix operator_matrix(const OperatorKind& k, const Truncation& t);

/// max |U^dag U - I| entry.
double unitarity_deviation(const Matrix& u);

/// Applies a matrix acting on the listed modes (in that order).
FockVector apply(const Matrix& m, const FockVector& v, std::span<const std::size_t> modes);
FockVector apply(const OperatorKind& k, const FockVector& v, std::span<const std::size_t> modes);

/// <v| M_0 (x) M_1 (x) ... |v> / <v|v>, contracting mode by mode.
cplx expect(std::span<const Matrix> per_mode, const FockVector& v);

/// Unnormalized projection of one mode onto |0><0| (no click) or I - |0><0| (click).
FockVector project_threshold(const FockVector& v, std::size_t mode, bool click);

}  // namespace ecs::oracle
