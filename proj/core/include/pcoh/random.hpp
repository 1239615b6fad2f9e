#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "pcoh/linalg.hpp"
#include "pcoh/states.hpp"

namespace pcoh {

/// Independent stream seed for index `stream` derived from `seed`
/// (splitmix64 finalizer on both words).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator. Samples are a deterministic function of the seed on a
/// fixed platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }
  /// Standard complex Gaussian (E|z|^2 = 1).
  cplx complex_normal();
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

CMatrix ginibre_matrix(int rows, int cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// moved into Q.
UnitaryMatrix haar_unitary(int d, Rng& rng);
UnitaryMatrix haar_unitary(int d, std::uint64_t seed);

/// Columns 0..cols-1 of a Haar unitary on C^rows.
CMatrix haar_isometry(int rows, int cols, Rng& rng);

CVector haar_vector(int d, Rng& rng);
PureState haar_pure(int da, int db, Rng& rng);
PureState haar_pure(int da, int db, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) for a d x rank Ginibre G.
DensityMatrix ginibre_density(int d, int rank, Rng& rng);
DensityMatrix ginibre_density(int d, int rank, std::uint64_t seed);
/// Bipartite variant on C^da ⊗ C^db.
DensityMatrix ginibre_density(int da, int db, int rank, Rng& rng);
DensityMatrix ginibre_density(int da, int db, int rank, std::uint64_t seed);

/// Random point on the probability simplex (normalized exponentials).
ProbVector random_simplex(int d, Rng& rng);

struct HaarPureKind {
  int da;
  int db;
};
struct HaarUnitaryKind {
  int d;
};
struct GinibreDensityKind {
  int d;
  int rank;
};
using SampleKind = std::variant<HaarPureKind, HaarUnitaryKind, GinibreDensityKind>;
using Sample = std::variant<PureState, UnitaryMatrix, DensityMatrix>;

Sample random_sample(const SampleKind& kind, std::uint64_t seed);

}  // namespace pcoh
