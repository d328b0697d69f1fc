#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cutpaste/tolerances.hpp"

namespace cutpaste {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kTol.structural);
bool is_unitary(const ComplexMatrix& m, double tol = kTol.structural);
bool is_normal(const ComplexMatrix& m, double tol = kTol.structural);

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
struct HermitianEig {
  RealVector values;
  ComplexMatrix vectors;
};

/// Throws NonHermitian when m deviates from m^dagger by more than kTol.structural.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Matrix exponential. Normal inputs go through a Schur (diagonal) decomposition,
/// everything else through degree-13 Pade with scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out every tensor factor except `keep_index`. `dims` lists the factor
/// dimensions, most significant first.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims, int keep_index);

/// Transposes tensor factor `which` in place of the full matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims, int which);

/// Principal square root of a positive-semidefinite Hermitian matrix; tiny
/// negative eigenvalues are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorization: vec(A X B^dagger) = (conj(B) kron A) vec(X).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);
ComplexMatrix sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// (sigma_x + i sigma_y)/2 = |0><1|
ComplexMatrix plus();
/// (sigma_x - i sigma_y)/2 = |1><0|
ComplexMatrix minus();
}  // namespace pauli

}  // namespace cutpaste
