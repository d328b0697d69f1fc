#include "cutpaste/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "cutpaste/errors.hpp"

namespace cutpaste {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) {
    throw Error(ErrorCode::BadDimension,
                std::string(what) + " needs a two-qubit state, got dimension " + std::to_string(rho.dim()));
  }
}

// Eigenvalues of a unit-trace state below this are rounding noise of the
// eigensolver and are treated as exact zeros.
constexpr double kRankFloor = 1e-14;

}  // namespace

Concurrence concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  // lambda_i are the singular values of A = sqrt(rho) yy sqrt(rho)^*, since
  // A A^dagger = sqrt(rho) yy rho^* yy sqrt(rho). Taking them from an SVD keeps
  // absolute accuracy; square roots of eigenvalues of A A^dagger would blow
  // rounding noise of 1e-17 up to 1e-8.
  const auto eig = hermitian_eig(rho.matrix());
  RealVector roots(4);
  for (int i = 0; i < 4; ++i) {
    const double v = eig.values(i);
    roots(i) = v <= kRankFloor ? 0.0 : std::sqrt(v);
  }
  const ComplexMatrix s = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  const ComplexMatrix a = s * kron(pauli::y(), pauli::y()) * s.conjugate();
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();  // descending

  Concurrence c;
  c.pre_clamp = sv(0) - sv(1) - sv(2) - sv(3);
  c.value = std::max(0.0, c.pre_clamp);
  return c;
}

double negativity(const DensityMatrix& rho) {
  require_two_qubits(rho, "negativity");
  const ComplexMatrix pt = partial_transpose(rho.matrix(), {2, 2}, 1);
  const RealVector ev = hermitian_eig(pt).values;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) sum -= ev(i);
  }
  return sum;
}

DensityMatrix werner_state(double w, const DensityMatrix& omega) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "Werner parameter must lie in [0,1], got " + std::to_string(w));
  }
  require_two_qubits(omega, "werner_state");
  const ComplexMatrix& m = omega.matrix();
  const double purity = (m * m).trace().real();
  if (std::abs(purity - 1.0) > kTol.comparison) {
    throw Error(ErrorCode::InvalidState, "Werner reference state is not pure");
  }
  const ComplexMatrix marginal = partial_trace(m, {2, 2}, 0);
  if ((marginal - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kTol.comparison) {
    throw Error(ErrorCode::InvalidState, "Werner reference state is not maximally entangled");
  }
  return DensityMatrix(w * m + (1.0 - w) * ComplexMatrix::Identity(4, 4) / 4.0);
}

double min_negativity_for_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return 0.5 * (std::sqrt((1.0 - c) * (1.0 - c) + c * c) - (1.0 - c));
}

}  // namespace cutpaste
