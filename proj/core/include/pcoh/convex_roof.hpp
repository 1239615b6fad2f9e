#pragma once

#include <cstdint>
#include <functional>

#include "pcoh/states.hpp"
#include "pcoh/tolerance.hpp"

namespace pcoh {

/// Budget of the convex-roof search.
///
/// Ensembles of size m are parameterized by an m x r column-orthonormal
/// mixing matrix applied to the spectral ensemble of rank r. Each restart is
/// a greedy descent over two-row complex rotations: one iteration proposes a
/// rotation with random phase and angle in [-step, step] for every row pair,
/// and step is annealed geometrically from `initial_step` to `final_step`
/// over `max_iters` iterations. A restart ends early when `stall_window`
/// consecutive iterations bring no measurable improvement. Restart 0 starts
/// from the spectral ensemble itself.
struct RoofConfig {
  int restarts = 32;
  int ensemble_size = 0;  // 0 selects rank^2, capped at 16
  int max_iters = 2000;
  int stall_window = 25;  // 0 disables early stopping
  double initial_step = 0.7853981633974483;
  double final_step = 1e-4;
  std::uint64_t seed = 0;
  int threads = 1;

  [[nodiscard]] int resolved_ensemble_size(int rank) const;
};

struct RoofResult {
  double value;
  Ensemble ensemble;
  bool converged;
  long evaluations;
};

using PureValuation = std::function<double(const PureState&)>;

/// Upper bound on min sum_i p_i valuation(psi_i) over pure-state ensembles
/// of `rho`. Never exceeds the spectral-ensemble average.
RoofResult convex_roof(const DensityMatrix& rho, const PureValuation& valuation, const RoofConfig& cfg = {},
                       const Tolerance& tol = {});

}  // namespace pcoh
