#include "cutpaste/continuous.hpp"

#include <cmath>
#include <utility>

#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"

namespace cutpaste {

namespace {

void require_branch(int j) {
  if (j != 1 && j != 2) throw Error(ErrorCode::OutOfRange, "generator index must be 1 or 2");
}

void require_rate(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::OutOfRange, "dissipation rate must be finite and >= 0");
  }
}

void require_distance(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::OutOfRange, "propagation distance must be finite and >= 0");
  }
}

// -i[H, .] as a superoperator.
ComplexMatrix hamiltonian_part(const ComplexMatrix& h) {
  const ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
  return -kI * (sandwich_superop(h, id) - sandwich_superop(id, h));
}

// 2 L . L^dag - L^dag L . - . L^dag L
ComplexMatrix lindblad_part(const ComplexMatrix& l) {
  const ComplexMatrix id = ComplexMatrix::Identity(l.rows(), l.cols());
  const ComplexMatrix ll = l.adjoint() * l;
  return 2.0 * sandwich_superop(l, l) - sandwich_superop(ll, id) - sandwich_superop(id, ll);
}

ComplexMatrix rotation_hamiltonian(int j, double omega) {
  return (j == 1 ? omega : -omega) * pauli::x();
}

std::string rate_label(const char* family, int j, double omega, double eps) {
  return std::string(family) + "_L" + std::to_string(j) + "(omega=" + std::to_string(omega) +
         ",eps=" + std::to_string(eps) + ")";
}

double state_pre_clamp(const ComplexMatrix& superop, int dim, const ComplexMatrix& rho0) {
  ComplexMatrix out = apply_superop_on_first(superop, dim, dim, rho0, dim);
  out = 0.5 * (out + out.adjoint());
  const double min_eig = hermitian_eig(out).values.minCoeff();
  if (min_eig < -kTol.psd) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "propagated state has eigenvalue " + std::to_string(min_eig));
  }
  return concurrence(DensityMatrix(out)).pre_clamp;
}

template <typename Propagator>
std::vector<ProfilePoint> profile_impl(Propagator&& prop, int dim, double x_max, int steps,
                                       const ComplexVector& initial) {
  if (steps < 2) throw Error(ErrorCode::OutOfRange, "profile needs at least 2 steps");
  require_distance(x_max);
  if (dim != 2 || initial.size() != 4) {
    throw Error(ErrorCode::BadDimension, "concurrence profiles need a qubit line and a two-qubit state");
  }
  const ComplexMatrix rho0 = DensityMatrix::pure(initial).matrix();
  std::vector<ProfilePoint> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    const double pc = state_pre_clamp(prop(x), dim, rho0);
    out[static_cast<std::size_t>(i)] = {x, std::max(0.0, pc), pc};
  }
  return out;
}

template <typename Propagator>
std::optional<double> eb_length_impl(Propagator&& prop, int dim, double x_hi, double scan_step) {
  require_distance(x_hi);
  if (!(scan_step > 0.0)) throw Error(ErrorCode::OutOfRange, "scan step must be positive");
  if (dim != 2) throw Error(ErrorCode::BadDimension, "EB length is defined for qubit lines only");
  const ComplexMatrix rho0 = DensityMatrix::pure(singlet()).matrix();
  auto f = [&](double x) { return state_pre_clamp(prop(x), dim, rho0); };

  if (f(0.0) <= 0.0) throw Error(ErrorCode::NoBracket, "line is entanglement breaking already at x = 0");

  // Curves can dip and recover, so the first sign change is located on a fine
  // grid before bisecting.
  double lo = 0.0;
  const auto n = static_cast<long>(std::ceil(x_hi / scan_step));
  for (long i = 1; i <= n; ++i) {
    const double hi = std::min(x_hi, static_cast<double>(i) * scan_step);
    if (f(hi) <= 0.0) {
      double a = lo, b = hi;
      while (b - a > kTol.bisection * 1e-2) {
        const double mid = 0.5 * (a + b);
        (f(mid) <= 0.0 ? b : a) = mid;
      }
      return 0.5 * (a + b);
    }
    lo = hi;
  }
  return std::nullopt;
}

}  // namespace

Liouvillian::Liouvillian(int dim, ComplexMatrix generator, std::string label)
    : dim_(dim), generator_(std::move(generator)), label_(std::move(label)) {
  if (dim <= 0 || generator_.rows() != dim * dim || generator_.cols() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "generator must be dim^2 x dim^2");
  }
  // <<I| G = 0  <=>  trace preservation
  const ComplexVector id = vec(ComplexMatrix::Identity(dim, dim));
  const double defect = (id.adjoint() * generator_).cwiseAbs().maxCoeff();
  if (defect > kTol.structural * std::max(1.0, generator_.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::InvalidState, "generator is not trace preserving");
  }
}

Liouvillian rotating_ad_liouvillian(int j, double omega, double eps) {
  require_branch(j);
  require_rate(eps);
  ComplexMatrix g = hamiltonian_part(rotation_hamiltonian(j, omega)) + 0.5 * eps * lindblad_part(pauli::plus());
  return Liouvillian(2, std::move(g), rate_label("ad", j, omega, eps));
}

Liouvillian rotating_pd_liouvillian(int j, double omega, double eps, DephasingSign sign) {
  require_branch(j);
  require_rate(eps);
  const ComplexMatrix z = pauli::z();
  const ComplexMatrix id = pauli::identity();
  // [z,[z,r]] = 2r - 2 z r z
  const ComplexMatrix double_comm = 2.0 * sandwich_superop(id, id) - 2.0 * sandwich_superop(z, z);
  const double s = sign == DephasingSign::Decaying ? -1.0 : 1.0;
  ComplexMatrix g = hamiltonian_part(rotation_hamiltonian(j, omega)) + s * 0.5 * eps * double_comm;
  std::string label = rate_label("pd", j, omega, eps);
  if (sign == DephasingSign::Growing) label += "[growing-sign]";
  return Liouvillian(2, std::move(g), std::move(label));
}

Liouvillian average(const Liouvillian& a, const Liouvillian& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "generators act on different dimensions");
  return Liouvillian(a.dim(), 0.5 * (a.generator() + b.generator()), "avg(" + a.label() + "," + b.label() + ")");
}

ComplexMatrix propagator(const Liouvillian& l, double x) {
  require_distance(x);
  return expm(l.generator() * x);
}

QuantumChannel propagate(const Liouvillian& l, double x) {
  return QuantumChannel::from_superop(propagator(l, x), l.dim(), l.dim());
}

SwitchedLine::SwitchedLine(Liouvillian gen_even, Liouvillian gen_odd, double slice_len, std::string label)
    : even_(std::move(gen_even)), odd_(std::move(gen_odd)), slice_len_(slice_len), label_(std::move(label)) {
  if (even_.dim() != odd_.dim()) throw Error(ErrorCode::DimensionMismatch, "generators act on different dimensions");
  if (!(slice_len > 0.0) || !std::isfinite(slice_len)) {
    throw Error(ErrorCode::OutOfRange, "slice length must be positive");
  }
}

ComplexMatrix switched_propagator(const SwitchedLine& line, double x) {
  require_distance(x);
  const double s = line.slice_len();
  const auto whole = static_cast<long>(std::floor(x / s));
  const double rest = x - static_cast<double>(whole) * s;

  const ComplexMatrix step_even = propagator(line.gen_even(), s);
  const ComplexMatrix step_odd = propagator(line.gen_odd(), s);
  const auto d2 = line.dim() * line.dim();
  ComplexMatrix acc = ComplexMatrix::Identity(d2, d2);
  for (long k = 0; k < whole; ++k) acc = (k % 2 == 0 ? step_even : step_odd) * acc;
  if (rest > 0.0) {
    acc = propagator(whole % 2 == 0 ? line.gen_even() : line.gen_odd(), rest) * acc;
  }
  return acc;
}

QuantumChannel switched_channel(const SwitchedLine& line, double x) {
  return QuantumChannel::from_superop(switched_propagator(line, x), line.dim(), line.dim());
}

std::vector<ProfilePoint> concurrence_profile(const Liouvillian& l, double x_max, int steps,
                                              const ComplexVector& initial) {
  return profile_impl([&](double x) { return propagator(l, x); }, l.dim(), x_max, steps, initial);
}

std::vector<ProfilePoint> concurrence_profile(const SwitchedLine& line, double x_max, int steps,
                                              const ComplexVector& initial) {
  return profile_impl([&](double x) { return switched_propagator(line, x); }, line.dim(), x_max, steps,
                      initial);
}

std::vector<ProfilePoint> concurrence_profile(const Liouvillian& l, double x_max, int steps) {
  return concurrence_profile(l, x_max, steps, singlet());
}

std::vector<ProfilePoint> concurrence_profile(const SwitchedLine& line, double x_max, int steps) {
  return concurrence_profile(line, x_max, steps, singlet());
}

std::optional<double> eb_length(const Liouvillian& l, double x_hi, double scan_step) {
  return eb_length_impl([&](double x) { return propagator(l, x); }, l.dim(), x_hi, scan_step);
}

std::optional<double> eb_length(const SwitchedLine& line, double x_hi, double scan_step) {
  return eb_length_impl([&](double x) { return switched_propagator(line, x); }, line.dim(), x_hi, scan_step);
}

double trotter_gap(const SwitchedLine& line, double x) {
  const Liouvillian avg = average(line.gen_even(), line.gen_odd());
  return frobenius_distance(switched_propagator(line, x), propagator(avg, x));
}

}  // namespace cutpaste
