#include <doctest.h>

#include <cmath>

#include "pcoh/entanglement.hpp"
#include "pcoh/errors.hpp"
#include "pcoh/oracle.hpp"
#include "pcoh/partial_coherence.hpp"
#include "support.hpp"

using namespace pcoh;
using test::bell;

// Wootters formula evaluated independently in Python.
constexpr double kWerner05 = 0.0815271907349478;
constexpr double kWerner08 = 0.41024429307387456;
constexpr double kH_08_02 = 0.5004024235381879;

namespace {

PureState schmidt_form(const std::vector<double>& p) {
  const int d = static_cast<int>(p.size());
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v[i * d + i] = std::sqrt(p[static_cast<std::size_t>(i)]);
  return PureState(d, d, v);
}

}  // namespace

TEST_CASE("ent_pure examples") {
  CHECK(ent_pure(bell(), scf("shannon")) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(ent_pure(basis_state(3, 4, 2, 1), scf("shannon")) == 0.0);
  CHECK(ent_pure(schmidt_form({0.8, 0.2}), scf("shannon")) == doctest::Approx(kH_08_02).epsilon(1e-12));

  // Local unitaries leave the value unchanged.
  Rng rng(3);
  const PureState s = haar_pure(3, 4, rng);
  const PureState moved = apply_local(s, haar_unitary(3, rng).entries(), haar_unitary(4, rng).entries());
  CHECK(ent_pure(moved, scf("shannon")) == doctest::Approx(ent_pure(s, scf("shannon"))).epsilon(1e-10));
}

TEST_CASE("g_f examples") {
  CHECK(g_f(DensityMatrix::maximally_mixed(3, 1), scf("shannon")) == doctest::Approx(std::log(3.0)));
  CHECK(g_f(DensityMatrix::from_pure(basis_state(2, 1, 0, 0)), scf("one_minus_purity")) == doctest::Approx(0.0));
  CHECK(g_f(partial_trace(bell(), Party::a), scf("one_minus_max")) == doctest::Approx(0.5));
}

TEST_CASE("analytic minimizer reaches the Schmidt vector") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto [da, db] = test::random_dims(rng, 2, 5);
    const PureState s = haar_pure(da, db, rng);
    const CMatrix u = analytic_min_unitary(s).entries();
    const PureState moved = apply_local(s, u, CMatrix::Identity(db, db));
    const ProbVector pa = coherence_vectors(moved, VectorMode::a);
    const ProbVector sch = schmidt_coefficients(s);
    for (std::size_t i = 0; i < sch.size(); ++i) CHECK(std::abs(pa[i] - sch[i]) < 1e-10);
    for (std::size_t i = sch.size(); i < pa.size(); ++i) CHECK(pa[i] < 1e-10);

    const CMatrix ub = analytic_min_unitary_b(s).entries();
    const PureState mb = apply_local(s, CMatrix::Identity(da, da), ub);
    const ProbVector pb = coherence_vectors(mb, VectorMode::b);
    for (std::size_t i = 0; i < sch.size(); ++i) CHECK(std::abs(pb[i] - sch[i]) < 1e-10);
  }
}

TEST_CASE("sampled minimum of partial coherence") {
  const PureState s = haar_pure(3, 3, 5);
  const MinimizationResult r = sampled_min_partial_coherence(s, scf("shannon"), 500, 9);
  CHECK(r.value == doctest::Approx(ent_pure(s, scf("shannon"))).epsilon(1e-10));
  CHECK(r.samples_used == 500);
  CHECK(r.seed == 9);
  const MinimizationResult again = sampled_min_partial_coherence(s, scf("shannon"), 500, 9);
  CHECK(again.value == r.value);

  // Sampling never goes below the analytic minimum.
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const PureState t = haar_pure(2, 2, rng);
    const UnitaryMatrix u = haar_unitary(2, rng);
    const PureState moved = apply_local(t, u.entries(), CMatrix::Identity(2, 2));
    CHECK(pcoh_pure(moved, scf("shannon"), Party::a) >= ent_pure(t, scf("shannon")) - 1e-9);
  }
}

TEST_CASE("max_ent_under_pio") {
  const PureState psi = test::embedded({0.5, 0.26, 0.24}, 3);
  CHECK(max_ent_under_pio(psi, scf("shannon")) ==
        doctest::Approx(pcoh_pure(psi, scf("shannon"), Party::a)).epsilon(1e-12));
  CHECK(max_ent_under_pio(basis_state(2, 2, 1, 0), scf("shannon")) == 0.0);
  CHECK_THROWS_AS(max_ent_under_pio(maximal_state(3, 2), scf("shannon")), PreconditionError);

  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + rng.index(3);
    const PureState s = haar_pure(d, d + rng.index(2), rng);
    const double top = max_ent_under_pio(s, scf("shannon"));
    CHECK(top >= ent_pure(s, scf("shannon")) - 1e-10);
    CHECK(top <= pcoh_pure(s, scf("shannon"), Party::a) + 1e-10);
  }
}

TEST_CASE("oracle: concurrence and Werner values") {
  CHECK(oracle::concurrence(DensityMatrix::from_pure(bell())) == doctest::Approx(1.0));
  CHECK(oracle::concurrence(DensityMatrix::maximally_mixed(2, 2)) == doctest::Approx(0.0));
  CHECK(oracle::wootters_eof(oracle::werner_state(0.5)) == doctest::Approx(kWerner05).epsilon(1e-12));
  CHECK(oracle::wootters_eof(oracle::werner_state(0.8)) == doctest::Approx(kWerner08).epsilon(1e-12));
  CHECK(oracle::wootters_eof(oracle::werner_state(1.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(oracle::wootters_eof(oracle::werner_state(1.0 / 3.0)) == doctest::Approx(0.0));
  CHECK(oracle::binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(oracle::binary_entropy(0.0) == 0.0);
}

TEST_CASE("ent_mixed tracks the two-qubit oracle") {
  RoofConfig cfg;
  cfg.restarts = 4;
  for (double lambda : {0.5, 0.8}) {
    const DensityMatrix w = oracle::werner_state(lambda);
    const RoofResult r = ent_mixed(w, scf("shannon"), cfg);
    const double want = oracle::wootters_eof(w);
    CHECK(r.value >= want - 1e-6);
    CHECK(r.value <= want + 5e-3);
  }
  Rng rng(14);
  for (int k = 0; k < 4; ++k) {
    const DensityMatrix rho = ginibre_density(2, 2, 2, rng);
    cfg.seed = static_cast<std::uint64_t>(k);
    const RoofResult r = ent_mixed(rho, scf("shannon"), cfg);
    const double want = oracle::wootters_eof(rho);
    CHECK(r.value >= want - 1e-6);
    CHECK(r.value <= want + 5e-3);
  }
}
