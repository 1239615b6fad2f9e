#include "pcoh/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pcoh/errors.hpp"

namespace pcoh::oracle {

double binary_entropy(double x) {
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.da() != 2 || rho.db() != 2) throw DimensionError("concurrence: two-qubit state required");
  CMatrix yy = CMatrix::Zero(4, 4);
  // sigma_y ⊗ sigma_y in the |00>,|01>,|10>,|11> basis.
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix& r = rho.entries();
  const CMatrix tilde = yy * r.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const CMatrix sqrt_r = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix m = sqrt_r * tilde * sqrt_r;
  Eigen::SelfAdjointEigenSolver<CMatrix> es2(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> lam(4);
  for (int k = 0; k < 4; ++k) lam[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, es2.eigenvalues()[k]));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double wootters_eof(const DensityMatrix& rho) {
  const double c = std::min(1.0, concurrence(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

DensityMatrix werner_state(double lambda) {
  CVector singlet = CVector::Zero(4);
  singlet[1] = M_SQRT1_2;
  singlet[2] = -M_SQRT1_2;
  const CMatrix rho = lambda * singlet * singlet.adjoint() + (1.0 - lambda) * CMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(2, 2, rho);
}

}  // namespace pcoh::oracle
