#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "cutpaste/channels.hpp"

namespace cutpaste {

/// Lossy beam splitter. The retained modes see the renormalized T', R'; the
/// lost fraction only scales the success probability.
struct BeamSplitterParams {
  double T = 0.5;
  double R = 0.5;

  double loss() const { return 1.0 - T - R; }
  double t_prime() const { return T / (T + R); }
  double r_prime() const { return R / (T + R); }

  /// Throws ElementInconsistent for negative entries, T + R > 1 or T + R = 0.
  void validate() const;

  static BeamSplitterParams ideal() { return {0.5, 0.5}; }
  static BeamSplitterParams measured() { return {0.48, 0.44}; }
};

/// Polarizing beam splitter: H and V each see their own lossy splitter.
struct PbsParams {
  double T_H = 1.0;
  double R_H = 0.0;
  double T_V = 0.0;
  double R_V = 1.0;

  double loss_H() const { return 1.0 - T_H - R_H; }
  double loss_V() const { return 1.0 - T_V - R_V; }
  BeamSplitterParams h() const { return {T_H, R_H}; }
  BeamSplitterParams v() const { return {T_V, R_V}; }

  void validate() const;

  static PbsParams ideal() { return {}; }
  static PbsParams measured() { return {0.965, 0.0185, 0.004, 0.948}; }
};

/// Elements of one dual interferometer. Coupling factors are detection
/// efficiencies of the two Sagnac output ports, applied to probabilities.
struct DifElements {
  BeamSplitterParams bs = BeamSplitterParams::ideal();
  PbsParams pbs = PbsParams::ideal();
  double coupling_c = 1.0;
  double coupling_d = 1.0;

  void validate() const;

  static DifElements ideal() { return {}; }
  static DifElements measured() { return {BeamSplitterParams::measured(), PbsParams::measured()}; }
};

enum class Preset { Ideal, Measured, Custom };

std::string to_string(Preset p);
Preset preset_from_string(const std::string& s);
DifElements preset_elements(Preset p);

/// Half-wave plate [[cos 2xi, sin 2xi], [sin 2xi, -cos 2xi]].
ComplexMatrix hwp(double xi);

/// arccos(-sqrt(eta)) / 2. Throws OutOfRange outside [0,1].
double alpha_for_eta(double eta);

/// Polarization map of one dual interferometer with internal plate angle
/// `alpha`, after postselection on the detected port and the exact average
/// over the random Mach-Zehnder phase. Trace non-increasing; the unnormalized
/// map keeps the success probability.
QuantumChannel dif_map(double alpha, const DifElements& elements);

/// Same interferometer averaged over `samples` uniformly drawn Mach-Zehnder
/// phases instead of analytically. Only useful to validate dif_map.
QuantumChannel dif_map_monte_carlo(double alpha, const DifElements& elements, int samples, std::uint64_t seed);

struct OpticalSetup {
  double alpha1 = std::numbers::pi / 2;
  double alpha21 = std::numbers::pi / 2;
  double alpha2 = std::numbers::pi / 2;
  double theta = 0.0;
  double phi = 0.0;
  bool theta_present = false;
  bool phi_present = false;
  std::array<DifElements, 3> elements{};
  Preset preset = Preset::Ideal;
  double W = 0.96;
  /// Relative phase of the source state (|HV> + e^{i omega_phase}|VH>)/sqrt(2).
  double omega_phase = std::numbers::pi;
  std::string label = "identity";

  void validate() const;
};

enum class MapKind { MPrime, M1, M2, Identity };

std::string to_string(MapKind k);
MapKind map_kind_from_string(const std::string& s);

/// Standard configurations. M1 and M2 keep only the theta and only the phi
/// plates respectively; MPrime keeps both; Identity removes all external plates.
OpticalSetup make_setup(MapKind kind, double eta1 = 0.3, double eta2 = 0.3, Preset preset = Preset::Ideal,
                        double theta = std::numbers::pi / 4, double phi = std::numbers::pi / 4,
                        double W = 0.96);

ComplexVector source_state(double omega_phase);

/// Maps in signal order: DIF1, [U_phi], [U_theta], DIF2, [U_phi], [U_theta], DIF3.
std::vector<QuantumChannel> setup_elements(const OpticalSetup& s);

struct SetupMap {
  QuantumChannel map;
  double success_prob = 0.0;  // against the configured Werner input
};

SetupMap setup_map(const OpticalSetup& s);

struct OpticalPoint {
  double concurrence = 0.0;
  double pre_clamp = 0.0;
  double success_prob = 0.0;
};

/// Throws ZeroSuccessProbability if the postselected trace is below kTol.min_success.
OpticalPoint run_point(const OpticalSetup& s);

enum class SweepAxis { Theta, Phi };

struct SweepPoint {
  double angle = 0.0;
  double concurrence = 0.0;
  double pre_clamp = 0.0;
  double success_prob = 0.0;
};

/// run_point on `steps` evenly spaced angles of [lo, hi]. The varied plate is
/// inserted if the setup lacks it. Evaluated in parallel, returned in grid order.
std::vector<SweepPoint> sweep(const OpticalSetup& s, SweepAxis axis, double lo, double hi, int steps,
                              unsigned threads = 0);

}  // namespace cutpaste
