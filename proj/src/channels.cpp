#include "cutpaste/channels.hpp"

#include <cmath>
#include <utility>

#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"

namespace cutpaste {

namespace {

constexpr std::size_t kMaxKrausBeforeReduction = 8;

ComplexMatrix superop_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  const auto& k0 = kraus.front();
  ComplexMatrix s = ComplexMatrix::Zero(k0.rows() * k0.rows(), k0.cols() * k0.cols());
  for (const auto& k : kraus) s += sandwich_superop(k, k);
  return s;
}

// Unnormalized Choi matrix sum_ab Phi(|a><b|) (x) |a><b|, output factor first.
ComplexMatrix choi_from_superop(const ComplexMatrix& s, int in_dim, int out_dim) {
  ComplexMatrix j(out_dim * in_dim, out_dim * in_dim);
  for (int i = 0; i < out_dim; ++i)
    for (int jj = 0; jj < out_dim; ++jj)
      for (int a = 0; a < in_dim; ++a)
        for (int b = 0; b < in_dim; ++b)
          j(i * in_dim + a, jj * in_dim + b) = s(i + out_dim * jj, a + in_dim * b);
  return j;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, int in_dim, int out_dim) {
  const auto eig = hermitian_eig(choi);
  const double scale = std::max(1.0, choi.trace().real());
  if (eig.values.minCoeff() < -kTol.psd * scale) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "Choi matrix has eigenvalue " + std::to_string(eig.values.minCoeff()));
  }
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    const double lambda = eig.values(k);
    if (lambda <= kTol.kraus_drop * scale) continue;
    ComplexMatrix op(out_dim, in_dim);
    for (int i = 0; i < out_dim; ++i)
      for (int a = 0; a < in_dim; ++a) op(i, a) = std::sqrt(lambda) * eig.vectors(i * in_dim + a, k);
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(out_dim, in_dim));
  return kraus;
}

void require_qubit(const QuantumChannel& c, const char* what) {
  if (c.in_dim() != 2 || c.out_dim() != 2) {
    throw Error(ErrorCode::BadDimension, std::string(what) + " expects a qubit channel");
  }
}

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) {
  if (!is_square(m) || m.rows() == 0) {
    throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
  }
  if (!is_hermitian(m)) throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > kTol.structural) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(m.trace().real()));
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const double min_eig = hermitian_eig(matrix_).values.minCoeff();
  if (min_eig < -kTol.psd) {
    throw Error(ErrorCode::InvalidState, "density matrix has eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidState, "zero state vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ComplexVector omega_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

ComplexVector singlet() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, ComplexMatrix superop, int in_dim,
                               int out_dim)
    : kraus_(std::move(kraus)), superop_(std::move(superop)), in_dim_(in_dim), out_dim_(out_dim) {
  const ComplexMatrix gram = kraus_gram();
  const ComplexMatrix id = ComplexMatrix::Identity(in_dim_, in_dim_);
  trace_preserving_ = (gram - id).cwiseAbs().maxCoeff() <= kTol.structural;
  if (!trace_preserving_) {
    const double top = hermitian_eig(gram).values.maxCoeff();
    if (top > 1.0 + kTol.structural) {
      throw Error(ErrorCode::OutOfRange,
                  "Kraus operators are trace-increasing (largest eigenvalue of sum K^dagger K is " +
                      std::to_string(top) + ")");
    }
  }
}

QuantumChannel QuantumChannel::from_kraus(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::DimensionMismatch, "empty Kraus list");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionMismatch, "empty Kraus operator");
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators have inconsistent shapes");
    }
  }
  ComplexMatrix s = superop_from_kraus(kraus);
  const int in_dim = static_cast<int>(cols);
  const int out_dim = static_cast<int>(rows);
  if (kraus.size() > kMaxKrausBeforeReduction) {
    kraus = kraus_from_choi(choi_from_superop(s, in_dim, out_dim), in_dim, out_dim);
  }
  return QuantumChannel(std::move(kraus), std::move(s), in_dim, out_dim);
}

QuantumChannel QuantumChannel::from_superop(const ComplexMatrix& superop, int in_dim, int out_dim) {
  if (in_dim <= 0 || out_dim <= 0 || superop.rows() != out_dim * out_dim ||
      superop.cols() != in_dim * in_dim) {
    throw Error(ErrorCode::DimensionMismatch, "superoperator shape does not match dimensions");
  }
  auto kraus = kraus_from_choi(choi_from_superop(superop, in_dim, out_dim), in_dim, out_dim);
  return QuantumChannel(std::move(kraus), superop, in_dim, out_dim);
}

QuantumChannel QuantumChannel::identity(int dim) {
  return from_kraus({ComplexMatrix::Identity(dim, dim)});
}

ComplexMatrix QuantumChannel::kraus_gram() const {
  ComplexMatrix g = ComplexMatrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) g += k.adjoint() * k;
  return g;
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match channel input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::apply_on_first(const ComplexMatrix& rho, int ancilla_dim) const {
  if (ancilla_dim <= 0 || rho.rows() != in_dim_ * ancilla_dim || !is_square(rho)) {
    throw Error(ErrorCode::DimensionMismatch, "bipartite state dimension does not match channel input");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(ancilla_dim, ancilla_dim);
  ComplexMatrix out = ComplexMatrix::Zero(out_dim_ * ancilla_dim, out_dim_ * ancilla_dim);
  for (const auto& k : kraus_) {
    const ComplexMatrix kk = kron(k, id);
    out += kk * rho * kk.adjoint();
  }
  return out;
}

ComplexMatrix QuantumChannel::choi_matrix() const {
  return choi_from_superop(superop_, in_dim_, out_dim_) / static_cast<double>(in_dim_);
}

// ---------------------------------------------------------------------------
// Constructors

QuantumChannel ad_channel(double eta) {
  require_unit_interval(eta, "eta");
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  e1(1, 1) = std::sqrt(eta);
  ComplexMatrix e2 = ComplexMatrix::Zero(2, 2);
  e2(0, 1) = std::sqrt(1.0 - eta);
  return QuantumChannel::from_kraus({e1, e2});
}

QuantumChannel pd_channel(double p) {
  require_unit_interval(p, "p");
  return QuantumChannel::from_kraus(
      {std::sqrt((1.0 + p) / 2.0) * pauli::identity(), std::sqrt((1.0 - p) / 2.0) * pauli::z()});
}

QuantumChannel unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw Error(ErrorCode::NotUnitary, "matrix is not unitary within tolerance");
  return QuantumChannel::from_kraus({u});
}

QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& then) {
  if (then.in_dim() != first.out_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "compose: output of first does not feed input of then");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * then.kraus().size());
  for (const auto& b : then.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  if (kraus.size() > kMaxKrausBeforeReduction) {
    return QuantumChannel::from_superop(then.superop() * first.superop(), first.in_dim(), then.out_dim());
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel compose_sequence(std::span<const QuantumChannel> signal_order) {
  if (signal_order.empty()) throw Error(ErrorCode::DimensionMismatch, "empty channel sequence");
  QuantumChannel acc = signal_order.front();
  for (std::size_t i = 1; i < signal_order.size(); ++i) acc = compose(acc, signal_order[i]);
  return acc;
}

QuantumChannel power(const QuantumChannel& c, int n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "channel power needs n >= 1");
  QuantumChannel acc = c;
  for (int i = 1; i < n; ++i) acc = compose(acc, c);
  return acc;
}

double superop_distance(const QuantumChannel& a, const QuantumChannel& b) {
  return frobenius_distance(a.superop(), b.superop());
}

ComplexMatrix apply_superop_on_first(const ComplexMatrix& superop, int in_dim, int out_dim,
                                     const ComplexMatrix& rho, int ancilla_dim) {
  if (superop.rows() != out_dim * out_dim || superop.cols() != in_dim * in_dim ||
      rho.rows() != in_dim * ancilla_dim || !is_square(rho)) {
    throw Error(ErrorCode::DimensionMismatch, "apply_superop_on_first: shapes do not match");
  }
  ComplexMatrix out(out_dim * ancilla_dim, out_dim * ancilla_dim);
  ComplexMatrix block(in_dim, in_dim);
  for (int a = 0; a < ancilla_dim; ++a) {
    for (int b = 0; b < ancilla_dim; ++b) {
      for (int s = 0; s < in_dim; ++s)
        for (int t = 0; t < in_dim; ++t) block(s, t) = rho(s * ancilla_dim + a, t * ancilla_dim + b);
      const ComplexMatrix mapped = unvec(superop * vec(block), out_dim, out_dim);
      for (int i = 0; i < out_dim; ++i)
        for (int j = 0; j < out_dim; ++j) out(i * ancilla_dim + a, j * ancilla_dim + b) = mapped(i, j);
    }
  }
  return out;
}

DensityMatrix choi_state(const QuantumChannel& c) {
  ComplexMatrix j = c.choi_matrix();
  const double tr = j.trace().real();
  if (tr <= kTol.min_success) {
    throw Error(ErrorCode::ZeroSuccessProbability, "channel annihilates the maximally entangled state");
  }
  return DensityMatrix(j / tr);
}

EbVerdict is_eb(const QuantumChannel& c, double eb_tol) {
  require_qubit(c, "is_eb");
  const DensityMatrix choi = choi_state(c);
  const Concurrence conc = concurrence(choi);
  const double neg = negativity(choi);

  EbVerdict v;
  v.margin = conc.pre_clamp;
  v.concurrence = conc.value;
  v.negativity = neg;
  v.entanglement_breaking = conc.pre_clamp <= eb_tol;

  const double upper = conc.value / 2.0;
  const double lower = min_negativity_for_concurrence(conc.value);
  if (neg > upper + kTol.conflict_band || neg < lower - kTol.conflict_band) {
    throw Error(ErrorCode::ToleranceConflict,
                "concurrence " + std::to_string(conc.value) + " and negativity " + std::to_string(neg) +
                    " are inconsistent");
  }
  return v;
}

EbOrder eb_order(const QuantumChannel& c, int max_n) {
  require_qubit(c, "eb_order");
  if (max_n < 1) throw Error(ErrorCode::OutOfRange, "max_n must be >= 1");
  QuantumChannel cur = c;
  for (int n = 1; n <= max_n; ++n) {
    if (is_eb(cur).entanglement_breaking) return {n, max_n};
    cur = compose(cur, c);
  }
  return {std::nullopt, max_n};
}

}  // namespace cutpaste
