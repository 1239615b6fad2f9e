#include "pcoh/random.hpp"

#include <cmath>
#include <string>

#include "pcoh/errors.hpp"

namespace pcoh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_positive(int d, const char* who) {
  if (d <= 0) throw DimensionError(std::string(who) + ": dimension must be positive");
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CMatrix ginibre_matrix(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  // Column-major fill order keeps samples stable across Eigen versions.
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) g(r, c) = rng.complex_normal();
  }
  return g;
}

UnitaryMatrix haar_unitary(int d, Rng& rng) {
  require_positive(d, "haar_unitary");
  const CMatrix g = ginibre_matrix(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const cplx diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(d, rng);
}

CMatrix haar_isometry(int rows, int cols, Rng& rng) {
  if (cols > rows) throw DimensionError("haar_isometry: more columns than rows");
  return haar_unitary(rows, rng).entries().leftCols(cols);
}

CVector haar_vector(int d, Rng& rng) {
  require_positive(d, "haar_vector");
  CVector v(d);
  for (int k = 0; k < d; ++k) v[k] = rng.complex_normal();
  return v / v.norm();
}

PureState haar_pure(int da, int db, Rng& rng) {
  require_positive(da, "haar_pure");
  require_positive(db, "haar_pure");
  return PureState(da, db, haar_vector(da * db, rng));
}

PureState haar_pure(int da, int db, std::uint64_t seed) {
  Rng rng(seed);
  return haar_pure(da, db, rng);
}

DensityMatrix ginibre_density(int d, int rank, Rng& rng) { return ginibre_density(d, 1, rank, rng); }

DensityMatrix ginibre_density(int d, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return ginibre_density(d, rank, rng);
}

DensityMatrix ginibre_density(int da, int db, int rank, Rng& rng) {
  require_positive(da, "ginibre_density");
  require_positive(db, "ginibre_density");
  const int d = da * db;
  if (rank <= 0 || rank > d) throw DimensionError("ginibre_density: rank must lie in [1, d]");
  const CMatrix g = ginibre_matrix(d, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(da, db, std::move(rho));
}

DensityMatrix ginibre_density(int da, int db, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return ginibre_density(da, db, rank, rng);
}

ProbVector random_simplex(int d, Rng& rng) {
  require_positive(d, "random_simplex");
  std::vector<double> w(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (double& x : w) x /= sum;
  return ProbVector(std::move(w));
}

Sample random_sample(const SampleKind& kind, std::uint64_t seed) {
  Rng rng(seed);
  return std::visit(
      [&rng](const auto& k) -> Sample {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, HaarPureKind>) {
          return haar_pure(k.da, k.db, rng);
        } else if constexpr (std::is_same_v<K, HaarUnitaryKind>) {
          return haar_unitary(k.d, rng);
        } else {
          return ginibre_density(k.d, k.rank, rng);
        }
      },
      kind);
}

}  // namespace pcoh
