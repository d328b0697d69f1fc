#include "cutpaste/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "cutpaste/errors.hpp"

namespace cutpaste {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (!is_square(m)) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " needs a square matrix, got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

std::vector<Eigen::Index> strides_for(const std::vector<int>& dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims[k + 1];
  }
  return strides;
}

void check_dims(const ComplexMatrix& m, const std::vector<int>& dims, int index, const char* what) {
  require_square(m, what);
  if (dims.empty()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": empty dims");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": non-positive factor");
    total *= d;
  }
  if (total != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dims product " + std::to_string(total) +
                    " does not match matrix dimension " + std::to_string(m.rows()));
  }
  if (index < 0 || index >= static_cast<int>(dims.size())) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": factor index out of range");
  }
}

ComplexMatrix expm_pade13(const ComplexMatrix& a) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  static constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const ComplexMatrix s = a / std::ldexp(1.0, squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix s2 = s * s;
  const ComplexMatrix s4 = s2 * s2;
  const ComplexMatrix s6 = s4 * s2;

  const ComplexMatrix u_inner = s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 + b[5] * s4 +
                                b[3] * s2 + b[1] * id;
  const ComplexMatrix u = s * u_inner;
  const ComplexMatrix v = s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) + b[6] * s6 + b[4] * s4 +
                          b[2] * s2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!is_square(m)) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!is_square(m)) return false;
  const auto id = ComplexMatrix::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_normal(const ComplexMatrix& m, double tol) {
  if (!is_square(m)) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs2().sum());
  return (m * m.adjoint() - m.adjoint() * m).cwiseAbs().maxCoeff() <= tol * scale;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!is_hermitian(m)) {
    throw Error(ErrorCode::NonHermitian, "hermitian_eig input is not Hermitian within tolerance");
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonHermitian, "eigen solver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  if (m.cwiseAbs().maxCoeff() == 0.0) return ComplexMatrix::Identity(n, n);

  if (is_normal(m, 1e-14)) {
    Eigen::ComplexSchur<ComplexMatrix> schur(m);
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& q = schur.matrixU();
    // A normal matrix has a diagonal Schur form; if rounding left noticeable
    // off-diagonal mass, fall through to Pade.
    const double off = (t - ComplexMatrix(t.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off <= 1e-12 * std::max(1.0, t.cwiseAbs().maxCoeff())) {
      ComplexVector d = t.diagonal().array().exp();
      return q * d.asDiagonal() * q.adjoint();
    }
  }
  return expm_pade13(m);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims, int keep_index) {
  check_dims(m, dims, keep_index, "partial_trace");
  const auto strides = strides_for(dims);
  const int dk = dims[keep_index];
  const Eigen::Index stride = strides[keep_index];
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const int i = static_cast<int>((r / stride) % dk);
    const Eigen::Index base = r - i * stride;
    for (int j = 0; j < dk; ++j) {
      out(i, j) += m(r, base + j * stride);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims, int which) {
  check_dims(m, dims, which, "partial_transpose");
  const auto strides = strides_for(dims);
  const int dw = dims[which];
  const Eigen::Index stride = strides[which];
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Eigen::Index ri = (r / stride) % dw;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Eigen::Index ci = (c / stride) % dw;
      const Eigen::Index r2 = r + (ci - ri) * stride;
      const Eigen::Index c2 = c + (ri - ci) * stride;
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "frobenius_distance: shapes differ");
  }
  return (a - b).norm();
}

ComplexVector vec(const ComplexMatrix& m) {
  // Eigen's default storage is column-major, so the raw buffer is already stacked by columns.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows * cols != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "unvec: size does not match requested shape");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right) {
  return kron(right.conjugate(), left);
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix plus() { return 0.5 * (x() + kI * y()); }

ComplexMatrix minus() { return 0.5 * (x() - kI * y()); }

}  // namespace pauli

}  // namespace cutpaste
