#include "pcoh/linalg.hpp"

#include <cmath>

#include "pcoh/errors.hpp"

namespace pcoh {

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity_residual: matrix not square");
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  return max_abs_diff(u.adjoint() * u, id);
}

CMatrix unitary_with_first_column(const CVector& u) {
  const auto d = u.size();
  if (d == 0) throw DimensionError("unitary_with_first_column: empty vector");
  const double norm = u.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw ValidationError("unitary_with_first_column: vector is not normalized");
  }
  CMatrix seed(d, d);
  seed.col(0) = u;
  // Pick the identity columns least aligned with u so [u | rest] has full rank.
  Eigen::Index pivot = 0;
  u.cwiseAbs().maxCoeff(&pivot);
  Eigen::Index c = 1;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (k == pivot) continue;
    seed.col(c++) = CVector::Unit(d, k);
  }
  Eigen::HouseholderQR<CMatrix> qr(seed);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  // First column of Q is u up to a phase; the other columns span its complement.
  q.col(0) = u;
  return q;
}

CMatrix unitary_mapping(const CVector& from, const CVector& to) {
  if (from.size() != to.size()) throw DimensionError("unitary_mapping: length mismatch");
  return unitary_with_first_column(to) * unitary_with_first_column(from).adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace pcoh
