#include "pcoh/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcoh/errors.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/random.hpp"

namespace pcoh {

double ent_pure(const PureState& s, const ScfDescriptor& f) { return eval_scf(f, schmidt_coefficients(s)); }

UnitaryMatrix analytic_min_unitary(const PureState& s) {
  const SpectralDecomposition spec = spectral(partial_trace(s, Party::a));
  return UnitaryMatrix(spec.vectors.entries().adjoint());
}

UnitaryMatrix analytic_min_unitary_b(const PureState& s) {
  const SpectralDecomposition spec = spectral(partial_trace(s, Party::b));
  return UnitaryMatrix(spec.vectors.entries().adjoint());
}

MinimizationResult sampled_min_partial_coherence(const PureState& s, const ScfDescriptor& f, int n,
                                                 std::uint64_t seed) {
  if (n < 0) throw ValidationError("sampled_min_partial_coherence: negative sample count");
  const CMatrix id_b = CMatrix::Identity(s.db(), s.db());
  UnitaryMatrix best = analytic_min_unitary(s);
  double best_value = pcoh_pure(apply_local(s, best.entries(), id_b), f, Party::a);
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    UnitaryMatrix u = haar_unitary(s.da(), rng);
    const double v = pcoh_pure(apply_local(s, u.entries(), id_b), f, Party::a);
    if (v < best_value) {
      best_value = v;
      best = std::move(u);
    }
  }
  return {best_value, std::move(best), n, seed};
}

RoofResult ent_mixed(const DensityMatrix& rho, const ScfDescriptor& f, const RoofConfig& cfg,
                     const Tolerance& tol) {
  return convex_roof(
      rho, [&f](const PureState& s) { return ent_pure(s, f); }, cfg, tol);
}

double g_f(const DensityMatrix& rho_a, const ScfDescriptor& f) { return eval_scf(f, spectral(rho_a).values); }

double max_ent_under_pio(const PureState& s, const ScfDescriptor& f, const Tolerance& tol) {
  const double value = pcoh_pure(s, f, Party::a);
  const KrausSet u = orthogonalizing_pio(s, tol);
  const PureState out(s.da(), s.db(), u.operators().front() * s.amps());
  const double realized = ent_pure(out, f);
  if (std::abs(realized - value) > tol.fid_tol) {
    throw Error("max_ent_under_pio: orthogonalized state has entanglement " + std::to_string(realized) +
                " instead of " + std::to_string(value));
  }
  return value;
}

}  // namespace pcoh
