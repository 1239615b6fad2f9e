#pragma once

// Closed-form reference values. Used by tests and verification suites only;
// library routines never substitute these for their own computations.

#include "pcoh/states.hpp"

namespace pcoh::oracle {

/// Concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Entanglement of formation of a two-qubit state, in nats.
double wootters_eof(const DensityMatrix& rho);

/// Werner state lambda |Psi-><Psi-| + (1 - lambda) I / 4.
DensityMatrix werner_state(double lambda);

/// Binary entropy in nats.
double binary_entropy(double x);

}  // namespace pcoh::oracle
