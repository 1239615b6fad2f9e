#pragma once

namespace pcoh {

/// Numerical slack shared by every module.
///
/// `atol` bounds entrywise rounding on validated objects, `fid_tol` is the
/// fidelity deficit accepted from synthesized channels, and `opt_tol` is the
/// convergence threshold of the convex-roof optimizer.
struct Tolerance {
  double atol = 1e-10;
  double fid_tol = 1e-9;
  double opt_tol = 1e-6;

  /// All positive and ordered atol <= fid_tol <= opt_tol.
  [[nodiscard]] bool valid() const noexcept {
    return atol > 0 && fid_tol > 0 && opt_tol > 0 && atol <= fid_tol && fid_tol <= opt_tol;
  }
};

// Construction renormalizes silently only within this deviation.
inline constexpr double kRenormalizeLimit = 1e-6;

}  // namespace pcoh
