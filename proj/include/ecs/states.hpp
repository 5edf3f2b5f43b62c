#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ecs {

using cplx = std::complex<double>;

/// Largest photon number a Fock factor may carry. Beam splitting a Fock pair
/// expands into (n_a + n_b + 1) terms, so the cap bounds term growth.
inline constexpr int kFockCap = 4;

/// Default amplitude distance under which two coherent factors are merged by prune().
inline constexpr double kDefaultPruneEps = 1e-12;

/// One single-mode ket: either a coherent state |alpha> or a Fock state |n>.
struct KetFactor {
  enum class Kind { Coherent, Fock };

  Kind kind = Kind::Coherent;
  cplx amplitude{0.0, 0.0};  // meaningful for Coherent
  int photons = 0;           // meaningful for Fock

  static KetFactor coherent(cplx alpha) { return {Kind::Coherent, alpha, 0}; }
  static KetFactor fock(int n);
  static KetFactor vacuum() { return coherent(0.0); }

  bool is_coherent() const { return kind == Kind::Coherent; }
  bool is_fock() const { return kind == Kind::Fock; }

  friend bool operator==(const KetFactor&, const KetFactor&) = default;
};

/// <bra|ket> for single-mode factors.
cplx factor_overlap(const KetFactor& bra, const KetFactor& ket);

struct ProductTerm {
  cplx coefficient{1.0, 0.0};
  std::vector<KetFactor> factors;
};

/// A finite superposition of product kets over a fixed number of modes.
///
/// Values are immutable: every operation in the library returns a new state.
/// Construction validates arity, finiteness of coefficients and the Fock cap.
class HybridState {
 public:
  HybridState(std::size_t modes, std::vector<ProductTerm> terms);

  /// Single product term with unit coefficient.
  static HybridState product(std::vector<KetFactor> factors);
  static HybridState coherent_product(std::span<const cplx> amplitudes);
  static HybridState fock_product(std::span<const int> photons);
  static HybridState vacuum(std::size_t modes);

  std::size_t modes() const { return modes_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// True when every term holds a factor of `kind` in `mode`.
  bool mode_is(std::size_t mode, KetFactor::Kind kind) const;

  /// Same terms with every coefficient multiplied by `c`.
  HybridState scaled(cplx c) const;

 private:
  std::size_t modes_;
  std::vector<ProductTerm> terms_;
};

cplx overlap(const HybridState& bra, const HybridState& ket);
double norm(const HybridState& s);
HybridState normalize(const HybridState& s);
HybridState superpose(const HybridState& a, const HybridState& b, cplx ca, cplx cb);
HybridState tensor(const HybridState& a, const HybridState& b);
double fidelity(const HybridState& a, const HybridState& b);

/// Merge terms whose factor lists agree (coherent amplitudes within `eps`,
/// Fock numbers exactly) and drop terms with |coefficient| < eps.
HybridState prune(const HybridState& s, double eps = kDefaultPruneEps);

/// Reorders modes: output mode i is input mode order[i].
HybridState permute_modes(const HybridState& s, std::span<const std::size_t> order);

/// Text dump: one term per line, `re im | C:re,im F:n ...`.
std::string to_text(const HybridState& s);
void write_text(std::ostream& os, const HybridState& s);
HybridState from_text(const std::string& text);
HybridState read_text(std::istream& is);

}  // namespace ecs
