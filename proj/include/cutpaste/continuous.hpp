#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutpaste/channels.hpp"

namespace cutpaste {

/// Generator of a continuous homogeneous channel, acting on column-stacked
/// density matrices. Trace preservation is checked on construction; complete
/// positivity of exp(generator x) is not (a deliberately unphysical generator
/// can still be built for comparison runs).
class Liouvillian {
 public:
  Liouvillian(int dim, ComplexMatrix generator, std::string label);

  int dim() const { return dim_; }
  const ComplexMatrix& generator() const { return generator_; }
  const std::string& label() const { return label_; }

 private:
  int dim_;
  ComplexMatrix generator_;
  std::string label_;
};

enum class DephasingSign {
  Decaying,  // coherences decay (physical)
  Growing,  // +eps/2 [sz,[sz,rho]]; coherences grow, not a valid generator
};

/// -i[H_j, rho] + eps/2 (2 L rho L^dag - L^dag L rho - rho L^dag L) with
/// H_1 = omega sigma_x, H_2 = -omega sigma_x and the jump operator L = |0><1|,
/// so that omega = 0 reproduces ad_channel(exp(-eps x)).
Liouvillian rotating_ad_liouvillian(int j, double omega, double eps);

/// -i[H_j, rho] -/+ eps/2 [sigma_z, [sigma_z, rho]]; omega = 0 reproduces
/// pd_channel(exp(-2 eps x)) with the default sign.
Liouvillian rotating_pd_liouvillian(int j, double omega, double eps,
                                    DephasingSign sign = DephasingSign::Decaying);

/// (a + b) / 2, the n -> infinity limit of alternating a and b.
Liouvillian average(const Liouvillian& a, const Liouvillian& b);

/// exp(generator x) as a superoperator. Throws OutOfRange for x < 0.
ComplexMatrix propagator(const Liouvillian& l, double x);

QuantumChannel propagate(const Liouvillian& l, double x);

/// Piecewise-constant generator: gen_even on slices [2k s, (2k+1) s),
/// gen_odd on [(2k+1) s, (2k+2) s), s = slice_len.
class SwitchedLine {
 public:
  SwitchedLine(Liouvillian gen_even, Liouvillian gen_odd, double slice_len, std::string label = {});

  const Liouvillian& gen_even() const { return even_; }
  const Liouvillian& gen_odd() const { return odd_; }
  double slice_len() const { return slice_len_; }
  const std::string& label() const { return label_; }
  int dim() const { return even_.dim(); }

 private:
  Liouvillian even_;
  Liouvillian odd_;
  double slice_len_;
  std::string label_;
};

ComplexMatrix switched_propagator(const SwitchedLine& line, double x);

QuantumChannel switched_channel(const SwitchedLine& line, double x);

struct ProfilePoint {
  double x = 0.0;
  double concurrence = 0.0;
  double pre_clamp = 0.0;
};

/// Concurrence of (channel(x) x I)|psi><psi| at `steps` uniformly spaced points
/// on [0, x_max]. Default initial state is the singlet.
std::vector<ProfilePoint> concurrence_profile(const Liouvillian& l, double x_max, int steps);
std::vector<ProfilePoint> concurrence_profile(const SwitchedLine& line, double x_max, int steps);
std::vector<ProfilePoint> concurrence_profile(const Liouvillian& l, double x_max, int steps,
                                              const ComplexVector& initial);
std::vector<ProfilePoint> concurrence_profile(const SwitchedLine& line, double x_max, int steps,
                                              const ComplexVector& initial);

inline constexpr double kDefaultScanStep = 0.005;

/// First zero crossing of the pre-clamp concurrence on (0, x_hi], found by a
/// grid scan with `scan_step` followed by bisection. Empty when no crossing
/// occurs before x_hi. Throws NoBracket if the line is already EB at x = 0.
std::optional<double> eb_length(const Liouvillian& l, double x_hi, double scan_step = kDefaultScanStep);
std::optional<double> eb_length(const SwitchedLine& line, double x_hi,
                                double scan_step = kDefaultScanStep);

/// Frobenius distance between the switched propagator at x and the propagator
/// of the averaged generator.
double trotter_gap(const SwitchedLine& line, double x);

}  // namespace cutpaste
