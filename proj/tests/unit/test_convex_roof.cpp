#include <doctest.h>

#include <cmath>

#include "pcoh/convex_roof.hpp"
#include "pcoh/entanglement.hpp"
#include "pcoh/errors.hpp"
#include "pcoh/partial_coherence.hpp"
#include "support.hpp"

using namespace pcoh;

namespace {

PureValuation pcoh_a() {
  return [](const PureState& s) { return pcoh_pure(s, scf("shannon"), Party::a); };
}

RoofConfig small(std::uint64_t seed = 0) {
  RoofConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 400;
  cfg.seed = seed;
  return cfg;
}

double spectral_average(const DensityMatrix& rho, const PureValuation& v) {
  const SpectralDecomposition sd = spectral(rho);
  double acc = 0.0;
  for (std::size_t k = 0; k < sd.values.size(); ++k) {
    if (sd.values[k] <= 1e-10) continue;
    acc += sd.values[k] * v(PureState(rho.da(), rho.db(), sd.vectors.entries().col(static_cast<Eigen::Index>(k))));
  }
  return acc;
}

}  // namespace

TEST_CASE("pure input returns the valuation exactly") {
  const PureState s = haar_pure(3, 2, 8);
  const RoofResult r = convex_roof(DensityMatrix::from_pure(s), pcoh_a(), small());
  CHECK(r.value == doctest::Approx(pcoh_pure(s, scf("shannon"), Party::a)).epsilon(1e-12));
  CHECK(r.converged);
  CHECK(r.ensemble.states.size() == 1);
}

TEST_CASE("config validation") {
  RoofConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(convex_roof(DensityMatrix::maximally_mixed(2, 2), pcoh_a(), bad), ValidationError);
  CHECK_THROWS_AS(convex_roof(DensityMatrix::maximally_mixed(2, 2), PureValuation{}, RoofConfig{}), ValidationError);
  CHECK(RoofConfig{}.resolved_ensemble_size(2) == 4);
  CHECK(RoofConfig{}.resolved_ensemble_size(5) == 16);
  RoofConfig m;
  m.ensemble_size = 3;
  CHECK(m.resolved_ensemble_size(5) == 5);
}

TEST_CASE("property: result realizes its value and never exceeds the spectral average") {
  Rng rng(21);
  for (int k = 0; k < 15; ++k) {
    const DensityMatrix rho = ginibre_density(2, 2, 2 + rng.index(2), rng);
    const PureValuation v = pcoh_a();
    const RoofResult r = convex_roof(rho, v, small(k));
    CHECK(r.value >= 0.0);
    CHECK(r.value <= spectral_average(rho, v) + 1e-12);

    double realized = 0.0;
    for (std::size_t i = 0; i < r.ensemble.states.size(); ++i) realized += r.ensemble.weights[i] * v(r.ensemble.states[i]);
    CHECK(std::abs(realized - r.value) <= 1e-6);
    CHECK(max_abs_diff(r.ensemble.density().entries(), rho.entries()) < 1e-9);
  }
}

TEST_CASE("deterministic and schedule-independent") {
  const DensityMatrix rho = ginibre_density(2, 2, 3, 99);
  RoofConfig one = small(5);
  RoofConfig many = small(5);
  many.threads = 3;
  const RoofResult a = convex_roof(rho, pcoh_a(), one);
  const RoofResult b = convex_roof(rho, pcoh_a(), one);
  const RoofResult c = convex_roof(rho, pcoh_a(), many);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.evaluations == c.evaluations);
}

TEST_CASE("property: roof convexity on random pairs") {
  Rng rng(22);
  for (int k = 0; k < 3; ++k) {
    const DensityMatrix r1 = ginibre_density(2, 2, 2, rng);
    const DensityMatrix r2 = ginibre_density(2, 2, 2, rng);
    const double t = rng.uniform();
    const auto f = [](const PureState& s) { return ent_pure(s, scf("shannon")); };
    RoofConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(k);
    const double mixed = convex_roof(mix(r1, r2, t), f, cfg).value;
    const double split = t * convex_roof(r1, f, cfg).value + (1.0 - t) * convex_roof(r2, f, cfg).value;
    CHECK(mixed <= split + 1e-6);
  }
}
