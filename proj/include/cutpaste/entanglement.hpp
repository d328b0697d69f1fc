#pragma once

#include "cutpaste/channels.hpp"

namespace cutpaste {

/// Wootters concurrence. `pre_clamp` is lambda1 - lambda2 - lambda3 - lambda4
/// before the max(0, .), which stays informative past the separability point.
struct Concurrence {
  double value = 0.0;
  double pre_clamp = 0.0;
};

Concurrence concurrence(const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose on the second qubit.
double negativity(const DensityMatrix& rho);

/// W |omega><omega| + (1 - W) I/4. `omega` must be a pure maximally entangled
/// two-qubit state.
DensityMatrix werner_state(double w, const DensityMatrix& omega);

/// Smallest negativity compatible with a given concurrence for two qubits,
/// (sqrt((1-C)^2 + C^2) - (1-C)) / 2. The largest is C/2.
double min_negativity_for_concurrence(double c);

}  // namespace cutpaste
