#pragma once

namespace cutpaste {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double structural = 1e-10;     // hermiticity, unitarity, trace checks
  double comparison = 1e-9;      // cross-route agreement
  double psd = 1e-9;             // allowed negative eigenvalue of a state / Choi matrix
  double eb = 1e-9;              // concurrence at or below this counts as separable
  double conflict_band = 1e-8;   // concurrence/PPT disagreement allowed before erroring
  double eig_clamp = 1e-12;      // negative eigenvalues above -eig_clamp are rounded to 0
  double kraus_drop = 1e-14;     // relative Choi eigenvalue below which a Kraus term is dropped
  double bisection = 1e-4;       // EB-length root bracket width
  double min_success = 1e-12;    // postselection probability treated as zero
};

inline constexpr Tolerances kTol{};

}  // namespace cutpaste
