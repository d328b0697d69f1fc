#include "cutpaste/optics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"

namespace cutpaste {

namespace {

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::ElementInconsistent, std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

// [[t, ph r], [ph r, t]] on (transmitted, reflected).
ComplexMatrix splitter(const BeamSplitterParams& p, Complex phase) {
  const double t = std::sqrt(p.t_prime());
  const double r = std::sqrt(p.r_prime());
  ComplexMatrix m(2, 2);
  m << t, phase * r, phase * r, t;
  return m;
}

// Basis index pol * 2 + path.
ComplexMatrix pbs_pass(const PbsParams& p, Complex phase) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = splitter(p.h(), phase);
  m.block(2, 2, 2, 2) = splitter(p.v(), phase);
  return m;
}

struct DifBranches {
  ComplexMatrix port_c;  // already weighted by BS amplitude, loss and coupling
  ComplexMatrix port_d;
};

// The Sagnac loop takes the input on path a. The return pass sees the reflection
// phase conjugated since the beams traverse the splitter in the opposite direction.
DifBranches dif_branches(double alpha, const DifElements& e) {
  e.validate();
  const ComplexMatrix first = pbs_pass(e.pbs, kI);
  const ComplexMatrix back = pbs_pass(e.pbs, -kI);
  ComplexMatrix path_a = ComplexMatrix::Zero(2, 2);
  path_a(0, 0) = 1.0;
  ComplexMatrix path_b = ComplexMatrix::Zero(2, 2);
  path_b(1, 1) = 1.0;
  const ComplexMatrix plates = kron(hwp(0.0), path_a) + kron(hwp(alpha), path_b);
  const ComplexMatrix loop = back * plates * first;

  ComplexMatrix mc(2, 2), md(2, 2);
  for (int out = 0; out < 2; ++out) {
    for (int in = 0; in < 2; ++in) {
      mc(out, in) = loop(out * 2 + 0, in * 2 + 0);
      md(out, in) = loop(out * 2 + 1, in * 2 + 0);
    }
  }
  const double mean_pbs_loss = 0.5 * (e.pbs.loss_H() + e.pbs.loss_V());
  const double kept = (1.0 - mean_pbs_loss) * (1.0 - mean_pbs_loss) * (1.0 - e.bs.loss());
  const double scale = std::sqrt(kept);
  return {scale * std::sqrt(e.bs.t_prime() * e.coupling_c) * mc,
          scale * std::sqrt(e.bs.r_prime() * e.coupling_d) * md};
}

}  // namespace

void BeamSplitterParams::validate() const {
  require_probability(T, "T");
  require_probability(R, "R");
  if (T + R > 1.0 + kTol.structural) throw Error(ErrorCode::ElementInconsistent, "T + R exceeds 1");
  if (T + R <= 0.0) throw Error(ErrorCode::ElementInconsistent, "element transmits nothing");
}

void PbsParams::validate() const {
  h().validate();
  v().validate();
}

void DifElements::validate() const {
  bs.validate();
  pbs.validate();
  require_probability(coupling_c, "coupling_c");
  require_probability(coupling_d, "coupling_d");
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::Ideal: return "ideal";
    case Preset::Measured: return "measured";
    case Preset::Custom: return "custom";
  }
  return "custom";
}

Preset preset_from_string(const std::string& s) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "ideal") return Preset::Ideal;
  if (low == "measured") return Preset::Measured;
  if (low == "custom") return Preset::Custom;
  throw Error(ErrorCode::ParseError, "unknown preset '" + s + "'");
}

DifElements preset_elements(Preset p) {
  return p == Preset::Measured ? DifElements::measured() : DifElements::ideal();
}

ComplexMatrix hwp(double xi) {
  const double c = std::cos(2.0 * xi);
  const double s = std::sin(2.0 * xi);
  ComplexMatrix m(2, 2);
  m << c, s, s, -c;
  return m;
}

double alpha_for_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "eta must lie in [0,1], got " + std::to_string(eta));
  }
  return 0.5 * std::acos(-std::sqrt(eta));
}

QuantumChannel dif_map(double alpha, const DifElements& elements) {
  auto b = dif_branches(alpha, elements);
  return QuantumChannel::from_kraus({std::move(b.port_c), std::move(b.port_d)});
}

QuantumChannel dif_map_monte_carlo(double alpha, const DifElements& elements, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::OutOfRange, "need at least one phase sample");
  const auto b = dif_branches(alpha, elements);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < samples; ++i) {
    // Recombination on the 50/50 splitter; amplitudes are already in the branches.
    const ComplexMatrix k = b.port_c + kI * std::exp(kI * phase(rng)) * b.port_d;
    s += sandwich_superop(k, k);
  }
  return QuantumChannel::from_superop(s / static_cast<double>(samples), 2, 2);
}

void OpticalSetup::validate() const {
  for (double a : {alpha1, alpha21, alpha2, theta, phi, omega_phase}) {
    if (!std::isfinite(a)) throw Error(ErrorCode::OutOfRange, "setup angles must be finite");
  }
  if (!(W >= 0.0 && W <= 1.0)) throw Error(ErrorCode::OutOfRange, "Werner parameter must lie in [0,1]");
  for (const auto& e : elements) e.validate();
}

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::MPrime: return "mprime";
    case MapKind::M1: return "m1";
    case MapKind::M2: return "m2";
    case MapKind::Identity: return "identity";
  }
  return "identity";
}

MapKind map_kind_from_string(const std::string& s) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "mprime" || low == "m'") return MapKind::MPrime;
  if (low == "m1") return MapKind::M1;
  if (low == "m2") return MapKind::M2;
  if (low == "identity" || low == "id") return MapKind::Identity;
  throw Error(ErrorCode::ParseError, "unknown map '" + s + "'");
}

OpticalSetup make_setup(MapKind kind, double eta1, double eta2, Preset preset, double theta, double phi, double W) {
  OpticalSetup s;
  const double off = std::numbers::pi / 2;  // alpha_for_eta(1)
  switch (kind) {
    case MapKind::MPrime:
      s.alpha1 = alpha_for_eta(eta1);
      s.alpha21 = alpha_for_eta(eta1 * eta2);
      s.alpha2 = alpha_for_eta(eta2);
      s.theta_present = s.phi_present = true;
      break;
    case MapKind::M1:  // (A_eta2 U)(A_eta2 U)
      s.alpha1 = off;
      s.alpha21 = s.alpha2 = alpha_for_eta(eta2);
      s.theta_present = true;
      break;
    case MapKind::M2:  // (U A_eta1)(U A_eta1)
      s.alpha1 = s.alpha21 = alpha_for_eta(eta1);
      s.alpha2 = off;
      s.phi_present = true;
      break;
    case MapKind::Identity:
      s.alpha1 = s.alpha21 = s.alpha2 = off;
      break;
  }
  s.theta = theta;
  s.phi = phi;
  s.preset = preset;
  s.elements.fill(preset_elements(preset));
  s.W = W;
  s.label = to_string(kind);
  s.validate();
  return s;
}

ComplexVector source_state(double omega_phase) {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = std::exp(kI * omega_phase) / std::sqrt(2.0);
  return v;
}

std::vector<QuantumChannel> setup_elements(const OpticalSetup& s) {
  s.validate();
  std::vector<QuantumChannel> seq;
  auto plates = [&] {
    if (s.phi_present) seq.push_back(unitary_channel(hwp(s.phi)));
    if (s.theta_present) seq.push_back(unitary_channel(hwp(s.theta)));
  };
  seq.push_back(dif_map(s.alpha1, s.elements[0]));
  plates();
  seq.push_back(dif_map(s.alpha21, s.elements[1]));
  plates();
  seq.push_back(dif_map(s.alpha2, s.elements[2]));
  return seq;
}

SetupMap setup_map(const OpticalSetup& s) {
  const auto seq = setup_elements(s);
  QuantumChannel m = compose_sequence(seq);
  const DensityMatrix input = werner_state(s.W, DensityMatrix::pure(source_state(s.omega_phase)));
  const double p = m.apply_on_first(input.matrix(), 2).trace().real();
  return {std::move(m), p};
}

OpticalPoint run_point(const OpticalSetup& s) {
  const auto seq = setup_elements(s);
  ComplexMatrix rho = werner_state(s.W, DensityMatrix::pure(source_state(s.omega_phase))).matrix();
  for (const auto& c : seq) rho = c.apply_on_first(rho, 2);
  const double p = rho.trace().real();
  if (!(p >= kTol.min_success)) {
    throw Error(ErrorCode::ZeroSuccessProbability, "postselection probability " + std::to_string(p));
  }
  rho /= p;
  rho = 0.5 * (rho + rho.adjoint());
  const Concurrence c = concurrence(DensityMatrix(rho));
  return {c.value, c.pre_clamp, p};
}

std::vector<SweepPoint> sweep(const OpticalSetup& s, SweepAxis axis, double lo, double hi, int steps,
                              unsigned threads) {
  if (steps < 2) throw Error(ErrorCode::OutOfRange, "sweep needs at least 2 steps");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorCode::OutOfRange, "sweep range must be finite");
  s.validate();

  std::vector<SweepPoint> out(static_cast<std::size_t>(steps));
  auto eval = [&](int i) {
    const double angle = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    OpticalSetup local = s;
    if (axis == SweepAxis::Theta) {
      local.theta = angle;
      local.theta_present = true;
    } else {
      local.phi = angle;
      local.phi_present = true;
    }
    const OpticalPoint p = run_point(local);
    out[static_cast<std::size_t>(i)] = {angle, p.concurrence, p.pre_clamp, p.success_prob};
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(steps));
  if (threads <= 1) {
    for (int i = 0; i < steps; ++i) eval(i);
    return out;
  }

  // Strided partition; each point is written to its own slot so the result is
  // independent of scheduling. The lowest failing index wins.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(steps));
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = static_cast<int>(t); i < steps; i += static_cast<int>(threads)) {
        try {
          eval(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cutpaste
