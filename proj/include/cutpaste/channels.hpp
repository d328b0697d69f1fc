#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutpaste/qmath.hpp"
#include "cutpaste/tolerances.hpp"

namespace cutpaste {

/// Hermitian, unit-trace, positive-semidefinite operator. Construction validates.
class DensityMatrix {
 public:
  /// Throws InvalidState unless m is Hermitian, has unit trace and no
  /// eigenvalue below -kTol.psd.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// (|00> + |11>)/sqrt(2), the reference state for Choi matrices.
ComplexVector omega_plus();
/// (|01> - |10>)/sqrt(2).
ComplexVector singlet();

/// Completely positive map held both as a Kraus list and as a column-stacking
/// superoperator (out_dim^2 x in_dim^2). Immutable once built.
class QuantumChannel {
 public:
  /// Validates shapes and that sum K^dagger K <= I. Throws DimensionMismatch or
  /// OutOfRange (trace-increasing maps).
  static QuantumChannel from_kraus(std::vector<ComplexMatrix> kraus);

  /// Recovers a minimal Kraus set from the Choi matrix of `superop`. Throws
  /// NotCompletelyPositive if the Choi matrix has a negative eigenvalue.
  static QuantumChannel from_superop(const ComplexMatrix& superop, int in_dim, int out_dim);

  static QuantumChannel identity(int dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& superop() const { return superop_; }
  bool trace_preserving() const { return trace_preserving_; }

  /// sum_k K^dagger K
  ComplexMatrix kraus_gram() const;

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  /// (channel x identity) on an operator whose first tensor factor is the
  /// channel input and whose second factor has dimension `ancilla_dim`.
  ComplexMatrix apply_on_first(const ComplexMatrix& rho, int ancilla_dim) const;

  /// Unnormalized Choi matrix (channel x I)(|Omega><Omega|) with |Omega> the
  /// normalized maximally entangled state; the output factor comes first.
  ComplexMatrix choi_matrix() const;

 private:
  QuantumChannel(std::vector<ComplexMatrix> kraus, ComplexMatrix superop, int in_dim, int out_dim);

  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix superop_;
  int in_dim_ = 0;
  int out_dim_ = 0;
  bool trace_preserving_ = false;
};

QuantumChannel ad_channel(double eta);
QuantumChannel pd_channel(double p);
QuantumChannel unitary_channel(const ComplexMatrix& u);

/// Signal passes through `first`, then through `then`; superop = then * first.
QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& then);

/// Composition of a sequence given in signal order (element 0 acts first).
QuantumChannel compose_sequence(std::span<const QuantumChannel> signal_order);

/// n-fold self-composition, n >= 1.
QuantumChannel power(const QuantumChannel& c, int n);

double superop_distance(const QuantumChannel& a, const QuantumChannel& b);

/// Applies a superoperator to the first tensor factor of a bipartite operator.
ComplexMatrix apply_superop_on_first(const ComplexMatrix& superop, int in_dim, int out_dim,
                                     const ComplexMatrix& rho, int ancilla_dim);

/// Choi state, normalized by its trace so postselected maps are accepted too.
DensityMatrix choi_state(const QuantumChannel& c);

struct EbVerdict {
  bool entanglement_breaking = false;
  /// Pre-clamp concurrence of the Choi state. Negative means safely separable.
  double margin = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
};

/// Concurrence-based verdict with a negativity cross-check. Throws
/// ToleranceConflict when the two measures violate the exact two-qubit bounds
/// linking them by more than kTol.conflict_band.
EbVerdict is_eb(const QuantumChannel& c, double eb_tol = kTol.eb);

struct EbOrder {
  std::optional<int> order;  // empty: not EB for any n <= max_n
  int max_n = 0;
  bool bounded() const { return order.has_value(); }
};

EbOrder eb_order(const QuantumChannel& c, int max_n);

}  // namespace cutpaste
