#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pcoh/linalg.hpp"
#include "pcoh/majorization.hpp"
#include "pcoh/random.hpp"
#include "pcoh/states.hpp"

// Small generators shared by the property tests.
namespace pcoh::test {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline PureState bell() {
  CVector v = CVector::Zero(4);
  v[0] = kInvSqrt2;
  v[3] = kInvSqrt2;
  return PureState(2, 2, v);
}

// sqrt(q_i) |i>_a |0>_b
inline PureState embedded(const std::vector<double>& q, int db) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(q.size()) * db);
  for (std::size_t i = 0; i < q.size(); ++i) v[static_cast<Eigen::Index>(i) * db] = std::sqrt(q[i]);
  return PureState(static_cast<int>(q.size()), db, v);
}

inline std::pair<int, int> random_dims(Rng& rng, int lo = 2, int hi = 6) {
  const int a = lo + rng.index(hi - lo + 1);
  const int b = lo + rng.index(hi - lo + 1);
  return {a, b};
}

// A vector majorized by y: a few random T-transforms, then a shuffle.
inline std::vector<double> majorized_below(const std::vector<double>& y, Rng& rng) {
  std::vector<double> x = y;
  const int d = static_cast<int>(y.size());
  for (int k = 0; k < d; ++k) {
    const auto i = static_cast<std::size_t>(rng.index(d));
    auto j = static_cast<std::size_t>(rng.index(d - 1));
    if (j >= i) ++j;
    x = apply_t_transform(x, i, j, rng.uniform());
  }
  std::shuffle(x.begin(), x.end(), rng.engine());
  return x;
}

// Pure state with partial coherence vector q and Haar conditional b-states.
inline PureState with_pcv(const std::vector<double>& q, int db, Rng& rng) {
  const int da = static_cast<int>(q.size());
  CVector amps(da * db);
  for (int i = 0; i < da; ++i) amps.segment(i * db, db) = std::sqrt(q[static_cast<std::size_t>(i)]) * haar_vector(db, rng);
  return PureState(da, db, amps);
}

}  // namespace pcoh::test
