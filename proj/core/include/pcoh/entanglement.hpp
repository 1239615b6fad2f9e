#pragma once

#include <cstdint>

#include "pcoh/convex_roof.hpp"
#include "pcoh/pio.hpp"
#include "pcoh/scf.hpp"
#include "pcoh/states.hpp"

namespace pcoh {

/// f of the Schmidt vector (length min(da, db)).
double ent_pure(const PureState& s, const ScfDescriptor& f);

/// U' = sum_i |i><nu_i| on party a, where nu_i are the eigenvectors of the
/// reduced state in non-increasing eigenvalue order. After applying U' ⊗ 1
/// the party-a vector equals the Schmidt vector.
UnitaryMatrix analytic_min_unitary(const PureState& s);

/// Party-b analogue: acts on b so the party-b vector equals the Schmidt vector.
UnitaryMatrix analytic_min_unitary_b(const PureState& s);

struct MinimizationResult {
  double value;
  UnitaryMatrix minimizer;
  int samples_used;
  std::uint64_t seed;
};

/// Minimum of pcoh_pure((U ⊗ 1) s, f, a) over `n` Haar unitaries plus the
/// analytic minimizer. Ties keep the earliest candidate; the analytic one
/// is evaluated first.
MinimizationResult sampled_min_partial_coherence(const PureState& s, const ScfDescriptor& f, int n,
                                                 std::uint64_t seed);

/// Convex roof of ent_pure.
RoofResult ent_mixed(const DensityMatrix& rho, const ScfDescriptor& f, const RoofConfig& cfg = {},
                     const Tolerance& tol = {});

/// f of the spectrum of a one-party density matrix.
double g_f(const DensityMatrix& rho_a, const ScfDescriptor& f);

/// Largest entanglement reachable from s under PIO, f(psi_a). Realized by
/// orthogonalizing_pio; throws PreconditionError when the support of psi_a
/// exceeds db, or Error if the realized entanglement disagrees with f(psi_a).
double max_ent_under_pio(const PureState& s, const ScfDescriptor& f, const Tolerance& tol = {});

}  // namespace pcoh
