#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace pcoh {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest entrywise modulus of `a - b`.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Max entrywise deviation of U^dagger U from the identity.
double unitarity_residual(const CMatrix& u);

/// Unitary whose first column equals the unit vector `u` (Householder QR of
/// [u | I], phase-corrected so the first column matches `u` exactly).
CMatrix unitary_with_first_column(const CVector& u);

/// Unitary V with V * from = to, for unit vectors of equal length.
CMatrix unitary_mapping(const CVector& from, const CVector& to);

/// Kronecker product of two dense complex matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace pcoh
