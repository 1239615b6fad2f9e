#include "pcoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pcoh/errors.hpp"

namespace pcoh {

namespace {

void check_dims(int da, int db, const char* who) {
  if (da <= 0 || db <= 0) {
    throw DimensionError(std::string(who) + ": party dimensions must be positive");
  }
}

}  // namespace

Party parse_party(std::string_view label) {
  if (label == "a") return Party::a;
  if (label == "b") return Party::b;
  throw LookupError("unknown party label '" + std::string(label) + "' (expected a or b)");
}

std::string_view to_string(Party p) noexcept { return p == Party::a ? "a" : "b"; }

// ---------------------------------------------------------------- PureState

PureState::PureState(int da, int db, CVector amps, const Tolerance& tol)
    : da_(da), db_(db), amps_(std::move(amps)) {
  check_dims(da, db, "PureState");
  if (amps_.size() != static_cast<Eigen::Index>(da) * db) {
    throw DimensionError("PureState: expected " + std::to_string(da * db) + " amplitudes, got " +
                         std::to_string(amps_.size()));
  }
  if (!amps_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
  const double norm = amps_.norm();
  if (norm == 0.0) throw ValidationError("PureState: zero vector");
  const double dev = std::abs(norm - 1.0);
  if (dev > kRenormalizeLimit) {
    throw ValidationError("PureState: norm deviates from 1 by " + std::to_string(dev));
  }
  // Within rounding noise the amplitudes are kept as given, so reloading a
  // serialized state reproduces it bit for bit.
  if (dev > 64 * std::numeric_limits<double>::epsilon()) amps_ /= norm;
  (void)tol;
}

CMatrix PureState::coefficient_matrix() const {
  CMatrix m(da_, db_);
  for (int i = 0; i < da_; ++i) {
    for (int j = 0; j < db_; ++j) m(i, j) = amps_[i * db_ + j];
  }
  return m;
}

CMatrix PureState::projector() const { return amps_ * amps_.adjoint(); }

PureState make_pure(int da, int db, std::span<const cplx> amps, const Tolerance& tol) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v[static_cast<Eigen::Index>(k)] = amps[k];
  return PureState(da, db, std::move(v), tol);
}

PureState product_state(const CVector& a, const CVector& b, const Tolerance& tol) {
  CVector v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  }
  return PureState(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(v), tol);
}

PureState basis_state(int da, int db, int i, int j) {
  check_dims(da, db, "basis_state");
  if (i < 0 || i >= da || j < 0 || j >= db) throw DimensionError("basis_state: index out of range");
  CVector v = CVector::Zero(da * db);
  v[i * db + j] = 1.0;
  return PureState(da, db, std::move(v));
}

PureState tensor_parties(const PureState& first, const PureState& second) {
  const int da = first.da() * second.da();
  const int db = first.db() * second.db();
  CVector v(da * db);
  for (int i1 = 0; i1 < first.da(); ++i1) {
    for (int i2 = 0; i2 < second.da(); ++i2) {
      for (int j1 = 0; j1 < first.db(); ++j1) {
        for (int j2 = 0; j2 < second.db(); ++j2) {
          const int i = i1 * second.da() + i2;
          const int j = j1 * second.db() + j2;
          v[i * db + j] = first.amp(i1, j1) * second.amp(i2, j2);
        }
      }
    }
  }
  return PureState(da, db, std::move(v));
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(int da, int db, CMatrix entries, const Tolerance& tol)
    : da_(da), db_(db), rho_(std::move(entries)) {
  check_dims(da, db, "DensityMatrix");
  const Eigen::Index d = static_cast<Eigen::Index>(da) * db;
  if (rho_.rows() != d || rho_.cols() != d) {
    throw DimensionError("DensityMatrix: expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  if (!rho_.allFinite()) throw ValidationError("DensityMatrix: non-finite entry");
  const double herm = max_abs_diff(rho_, rho_.adjoint());
  if (herm > tol.atol) {
    throw ValidationError("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol.atol) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.atol) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::single(CMatrix entries, const Tolerance& tol) {
  const int d = static_cast<int>(entries.rows());
  return DensityMatrix(d, 1, std::move(entries), tol);
}

DensityMatrix DensityMatrix::from_pure(const PureState& s) { return DensityMatrix(s.da(), s.db(), s.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(int da, int db) {
  check_dims(da, db, "maximally_mixed");
  const int d = da * db;
  return DensityMatrix(da, db, CMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix mix(const DensityMatrix& x, const DensityMatrix& y, double t) {
  if (x.da() != y.da() || x.db() != y.db()) throw DimensionError("mix: dimension mismatch");
  if (t < 0.0 || t > 1.0) throw ValidationError("mix: weight outside [0, 1]");
  return DensityMatrix(x.da(), x.db(), t * x.entries() + (1.0 - t) * y.entries());
}

double trace_distance(const DensityMatrix& x, const DensityMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionError("trace_distance: dimension mismatch");
  const CMatrix diff = x.entries() - y.entries();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw DimensionError("fidelity: dimension mismatch");
  return psi.amps().dot(rho.entries() * psi.amps()).real();
}

// ------------------------------------------------------------ UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(CMatrix entries, const Tolerance& tol) : u_(std::move(entries)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0) throw DimensionError("UnitaryMatrix: not square");
  const double res = unitarity_residual(u_);
  if (res > tol.atol) throw ValidationError("UnitaryMatrix: U^dagger U deviates from I by " + std::to_string(res));
}

UnitaryMatrix UnitaryMatrix::identity(int d) { return UnitaryMatrix(CMatrix::Identity(d, d)); }

PureState apply_local(const PureState& s, const CMatrix& ua, const CMatrix& ub) {
  if (ua.rows() != s.da() || ua.cols() != s.da() || ub.rows() != s.db() || ub.cols() != s.db()) {
    throw DimensionError("apply_local: operator dimensions do not match the state");
  }
  // (Ua ⊗ Ub) vec(M) in row-major layout is Ua M Ub^T.
  const CMatrix m = ua * s.coefficient_matrix() * ub.transpose();
  CVector v(s.dim());
  for (int i = 0; i < s.da(); ++i) {
    for (int j = 0; j < s.db(); ++j) v[i * s.db() + j] = m(i, j);
  }
  return PureState(s.da(), s.db(), std::move(v));
}

// ---------------------------------------------------------------- spectral

SpectralDecomposition spectral(const DensityMatrix& rho, const Tolerance& tol) {
  const CMatrix& m = rho.entries();
  if (max_abs_diff(m, m.adjoint()) > tol.atol) throw ValidationError("spectral: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) throw Error("spectral: eigensolver failed");
  const Eigen::Index d = m.rows();
  std::vector<double> values(static_cast<std::size_t>(d));
  CMatrix vectors(d, d);
  bool clipped = false;
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < d; ++k) {
    double v = es.eigenvalues()[d - 1 - k];
    if (v < 0.0) {
      if (v < -tol.atol) throw ValidationError("spectral: eigenvalue " + std::to_string(v) + " below -atol");
      v = 0.0;
      clipped = true;
    }
    values[static_cast<std::size_t>(k)] = std::min(v, 1.0);
    vectors.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  if (clipped) {
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    for (double& v : values) v /= sum;
  }
  return {ProbVector(std::move(values), tol), UnitaryMatrix(std::move(vectors), tol)};
}

// ----------------------------------------------------------------- Schmidt

CVector SchmidtDecomposition::reconstruct() const {
  const Eigen::Index da = basis_a.rows();
  const Eigen::Index db = basis_b.rows();
  CVector v = CVector::Zero(da * db);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double c = std::sqrt(coeffs[n]);
    const auto col = static_cast<Eigen::Index>(n);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < db; ++j) v[i * db + j] += c * basis_a(i, col) * basis_b(j, col);
    }
  }
  return v;
}

SchmidtDecomposition schmidt(const PureState& s) {
  const CMatrix m = s.coefficient_matrix();
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index r = std::min(m.rows(), m.cols());
  std::vector<double> coeffs(static_cast<std::size_t>(r));
  double sum = 0.0;
  for (Eigen::Index n = 0; n < r; ++n) {
    const double sv = svd.singularValues()[n];
    coeffs[static_cast<std::size_t>(n)] = sv * sv;
    sum += sv * sv;
  }
  for (double& c : coeffs) c /= sum;
  // M = U S V^dagger, so psi_ij = sum_n s_n U_in conj(V_jn).
  return {ProbVector(std::move(coeffs)), svd.matrixU(), svd.matrixV().conjugate()};
}

ProbVector schmidt_coefficients(const PureState& s) {
  const CMatrix m = s.coefficient_matrix();
  Eigen::JacobiSVD<CMatrix> svd(m);
  std::vector<double> coeffs(static_cast<std::size_t>(svd.singularValues().size()));
  double sum = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double sv = svd.singularValues()[static_cast<Eigen::Index>(n)];
    coeffs[n] = sv * sv;
    sum += sv * sv;
  }
  for (double& c : coeffs) c /= sum;
  return ProbVector(std::move(coeffs));
}

// ----------------------------------------------------------- partial trace

DensityMatrix partial_trace(const PureState& s, Party keep) {
  const CMatrix m = s.coefficient_matrix();
  if (keep == Party::a) return DensityMatrix::single(m * m.adjoint());
  return DensityMatrix::single((m.adjoint() * m).transpose());
}

DensityMatrix partial_trace(const DensityMatrix& rho, Party keep) {
  const int da = rho.da();
  const int db = rho.db();
  const CMatrix& r = rho.entries();
  if (keep == Party::a) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i) {
      for (int k = 0; k < da; ++k) {
        for (int j = 0; j < db; ++j) out(i, k) += r(i * db + j, k * db + j);
      }
    }
    return DensityMatrix::single(std::move(out));
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int j = 0; j < db; ++j) {
    for (int l = 0; l < db; ++l) {
      for (int i = 0; i < da; ++i) out(j, l) += r(i * db + j, i * db + l);
    }
  }
  return DensityMatrix::single(std::move(out));
}

DensityMatrix Ensemble::density(const Tolerance& tol) const {
  if (states.empty() || states.size() != weights.size()) {
    throw DimensionError("Ensemble: weights and states differ in length");
  }
  const int da = states.front().da();
  const int db = states.front().db();
  CMatrix rho = CMatrix::Zero(da * db, da * db);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].da() != da || states[i].db() != db) throw DimensionError("Ensemble: mixed dimensions");
    rho += weights[i] * states[i].projector();
  }
  return DensityMatrix(da, db, std::move(rho), tol);
}

}  // namespace pcoh
