#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pcoh/linalg.hpp"
#include "pcoh/majorization.hpp"
#include "pcoh/tolerance.hpp"

namespace pcoh {

enum class Party { a, b };

Party parse_party(std::string_view label);
std::string_view to_string(Party p) noexcept;

/// Bipartite pure state on C^da ⊗ C^db.
///
/// Amplitudes are stored row-major: amps[i * db + j] is the coefficient of
/// |i>_a |j>_b (0-based).
class PureState {
 public:
  /// Renormalizes silently when |norm - 1| <= 1e-6, otherwise throws.
  PureState(int da, int db, CVector amps, const Tolerance& tol = {});

  [[nodiscard]] int da() const noexcept { return da_; }
  [[nodiscard]] int db() const noexcept { return db_; }
  [[nodiscard]] int dim() const noexcept { return da_ * db_; }
  [[nodiscard]] const CVector& amps() const noexcept { return amps_; }
  [[nodiscard]] cplx amp(int i, int j) const { return amps_[i * db_ + j]; }

  /// da x db coefficient matrix M(i, j) = amp(i, j).
  [[nodiscard]] CMatrix coefficient_matrix() const;

  /// Projector |psi><psi| as a dim x dim matrix.
  [[nodiscard]] CMatrix projector() const;

 private:
  int da_;
  int db_;
  CVector amps_;
};

PureState make_pure(int da, int db, std::span<const cplx> amps, const Tolerance& tol = {});

/// Product vector |a> ⊗ |b> as a PureState.
PureState product_state(const CVector& a, const CVector& b, const Tolerance& tol = {});

/// Computational basis product |i>_a |j>_b.
PureState basis_state(int da, int db, int i, int j);

/// Joint state of (a1 a2) ⊗ (b1 b2): party a of the result is a1 ⊗ a2 and
/// party b is b1 ⊗ b2.
PureState tensor_parties(const PureState& first, const PureState& second);

/// Density operator on C^da ⊗ C^db (db = 1 for one-party matrices).
class DensityMatrix {
 public:
  DensityMatrix(int da, int db, CMatrix entries, const Tolerance& tol = {});
  /// One-party matrix of dimension d.
  static DensityMatrix single(CMatrix entries, const Tolerance& tol = {});
  static DensityMatrix from_pure(const PureState& s);
  static DensityMatrix maximally_mixed(int da, int db);

  [[nodiscard]] int da() const noexcept { return da_; }
  [[nodiscard]] int db() const noexcept { return db_; }
  [[nodiscard]] int dim() const noexcept { return da_ * db_; }
  [[nodiscard]] const CMatrix& entries() const noexcept { return rho_; }

 private:
  int da_;
  int db_;
  CMatrix rho_;
};

/// Convex combination t * x + (1 - t) * y.
DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double t);

/// Trace distance 1/2 ||x - y||_1.
double trace_distance(const DensityMatrix& x, const DensityMatrix& y);

/// <psi| rho |psi>.
double fidelity(const PureState& psi, const DensityMatrix& rho);

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix entries, const Tolerance& tol = {});
  static UnitaryMatrix identity(int d);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(u_.rows()); }
  [[nodiscard]] const CMatrix& entries() const noexcept { return u_; }

 private:
  CMatrix u_;
};

/// (U_a ⊗ U_b) |psi>; either side may be the identity.
PureState apply_local(const PureState& s, const CMatrix& ua, const CMatrix& ub);

struct SpectralDecomposition {
  ProbVector values;       // non-increasing
  UnitaryMatrix vectors;   // column k pairs with values[k]
};

/// Hermitian eigendecomposition, eigenvalues clipped to [0, 1] and sorted
/// non-increasing. Degenerate eigenspaces come back in an arbitrary basis.
SpectralDecomposition spectral(const DensityMatrix& rho, const Tolerance& tol = {});

struct SchmidtDecomposition {
  ProbVector coeffs;  // squared Schmidt coefficients, length min(da, db), non-increasing
  CMatrix basis_a;    // da x min(da, db), orthonormal columns
  CMatrix basis_b;    // db x min(da, db), orthonormal columns

  /// sum_n sqrt(coeffs[n]) basis_a[:, n] ⊗ basis_b[:, n].
  [[nodiscard]] CVector reconstruct() const;
};

SchmidtDecomposition schmidt(const PureState& s);

/// Schmidt coefficients alone (no bases), same ordering as schmidt().
ProbVector schmidt_coefficients(const PureState& s);

/// Reduced state on the kept party.
DensityMatrix partial_trace(const PureState& s, Party keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Party keep);

/// Pure-state ensemble {weights[i], states[i]}.
struct Ensemble {
  ProbVector weights;
  std::vector<PureState> states;

  [[nodiscard]] DensityMatrix density(const Tolerance& tol = {}) const;
};

}  // namespace pcoh
