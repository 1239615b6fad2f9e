#pragma once

#include "pcoh/convex_roof.hpp"
#include "pcoh/scf.hpp"
#include "pcoh/states.hpp"

namespace pcoh {

enum class VectorMode { a, b, full };

VectorMode parse_vector_mode(std::string_view label);

/// Populations of a pure state in the reference basis.
///
/// Mode a gives the party-a vector (sum_j |psi_ij|^2)_i, mode b the party-b
/// vector (sum_i |psi_ij|^2)_j, and mode full every |psi_ij|^2 in storage
/// order.
ProbVector coherence_vectors(const PureState& s, VectorMode mode);

/// Partial decohering map: sum_i (|i><i| ⊗ 1) rho (|i><i| ⊗ 1).
DensityMatrix partial_dephase(const DensityMatrix& rho);

/// ||rho - Δ(rho)||_F <= atol * d.
bool is_partial_incoherent(const DensityMatrix& rho, const Tolerance& tol = {});

/// f applied to the party's coherence vector.
double pcoh_pure(const PureState& s, const ScfDescriptor& f, Party party);

/// Convex roof of pcoh_pure.
RoofResult pcoh_mixed(const DensityMatrix& rho, const ScfDescriptor& f, Party party, const RoofConfig& cfg = {},
                      const Tolerance& tol = {});

}  // namespace pcoh
