#include <doctest.h>

#include <cmath>

#include "pcoh/errors.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/pio.hpp"
#include "support.hpp"

using namespace pcoh;
using test::bell;

namespace {

double pipeline_fidelity(const ChannelPipeline& p, const PureState& src, const PureState& dst) {
  return fidelity(dst, apply_channel(p, DensityMatrix::from_pure(src)));
}

void check_stages_valid(const ChannelPipeline& p) {
  for (const auto& st : p.stages()) {
    CHECK(is_pio_kraus_set(st));
    CHECK(st.completeness_residual() <= 1e-10);
  }
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("is_pio_kraus_set examples") {
  CHECK(is_pio_kraus_set(dephasing_channel(3, 2)));
  CHECK_FALSE(is_pio_kraus_set(unitary_channel(2, 2, kron(hadamard(), CMatrix::Identity(2, 2)))));
  Rng rng(1);
  const KrausSet cu = controlled_unitary({haar_unitary(2, rng).entries(), haar_unitary(2, rng).entries()});
  CHECK(cu.size() == 1);
  CHECK(is_pio_kraus_set(cu));

  // Incomplete sets are reported separately from structural failures.
  const KrausSet half(2, 2, {CMatrix(CMatrix::Identity(4, 4) / 2.0)});
  CHECK(has_pio_structure(half));
  CHECK_THROWS_AS(is_pio_kraus_set(half), CompletenessError);
  CHECK(pio_structure_defect(dephasing_channel(2, 2)) == 0.0);
  CHECK(pio_structure_defect(unitary_channel(2, 2, kron(hadamard(), CMatrix::Identity(2, 2)))) > 0.5);
}

TEST_CASE("apply_channel examples") {
  const DensityMatrix rho = DensityMatrix::from_pure(bell());
  const DensityMatrix out = apply_channel(dephasing_channel(2, 2), rho);
  CMatrix want = CMatrix::Zero(4, 4);
  want(0, 0) = 0.5;
  want(3, 3) = 0.5;
  CHECK(max_abs_diff(out.entries(), want) < 1e-15);

  CHECK(max_abs_diff(apply_channel(unitary_channel(2, 2, CMatrix::Identity(4, 4)), rho).entries(), rho.entries()) == 0.0);

  const CMatrix u = haar_unitary(4, 3).entries();
  CHECK(max_abs_diff(apply_channel(unitary_channel(2, 2, u), rho).entries(), u * rho.entries() * u.adjoint()) < 1e-14);
  CHECK_THROWS_AS(apply_channel(dephasing_channel(3, 2), rho), DimensionError);
}

TEST_CASE("branch_outcomes examples") {
  const auto b = branch_outcomes(dephasing_channel(2, 2), bell());
  REQUIRE(b.size() == 2);
  CHECK(b[0].probability == doctest::Approx(0.5));
  CHECK(std::abs(b[0].state.amp(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(b[1].state.amp(1, 1)) == doctest::Approx(1.0));

  const CMatrix u = haar_unitary(4, 4).entries();
  const auto one = branch_outcomes(unitary_channel(2, 2, u), bell());
  REQUIRE(one.size() == 1);
  CHECK(one[0].probability == doctest::Approx(1.0));
  CHECK((one[0].state.amps() - u * bell().amps()).norm() < 1e-14);

  // Zero-probability branch (index 3) is dropped.
  const auto p = branch_outcomes(dephasing_channel(4, 2), test::embedded({0.5, 0.26, 0.24, 0.0}, 2));
  REQUIRE(p.size() == 3);
  CHECK(p[0].probability == doctest::Approx(0.5));
  CHECK(p[1].probability == doctest::Approx(0.26));
  CHECK(p[2].probability == doctest::Approx(0.24));
}

TEST_CASE("pio_convertible examples") {
  CHECK(pio_convertible(bell(), basis_state(2, 2, 0, 0)));
  const PureState psi = test::embedded({0.5, 0.26, 0.24, 0.0}, 2);
  const PureState phi = test::embedded({0.4, 0.4, 0.15, 0.05}, 2);
  CHECK_FALSE(pio_convertible(psi, phi));
  CHECK_FALSE(pio_convertible(phi, psi));

  // With the catalyst on both sides the conversion phi -> psi opens up.
  const PureState cat = test::embedded({0.6, 0.4}, 2);
  CHECK(pio_convertible(tensor_parties(phi, cat), tensor_parties(psi, cat)));
  CHECK_THROWS_AS(pio_convertible(bell(), basis_state(3, 2, 0, 0)), DimensionError);
}

TEST_CASE("synthesize_pio examples") {
  const ChannelPipeline p = synthesize_pio(bell(), basis_state(2, 2, 0, 0));
  check_stages_valid(p);
  CHECK(pipeline_fidelity(p, bell(), basis_state(2, 2, 0, 0)) >= 1.0 - 1e-9);

  const PureState target = haar_pure(3, 2, 17);
  const PureState maxi = maximal_state(3, 2);
  const ChannelPipeline q = synthesize_pio(maxi, target);
  check_stages_valid(q);
  CHECK(q.stages().size() <= 4);
  CHECK(pipeline_fidelity(q, maxi, target) >= 1.0 - 1e-9);

  const PureState cat = test::embedded({0.6, 0.4}, 2);
  const PureState src = tensor_parties(test::embedded({0.4, 0.4, 0.15, 0.05}, 2), cat);
  const PureState dst = tensor_parties(test::embedded({0.5, 0.26, 0.24, 0.0}, 2), cat);
  const ChannelPipeline r = synthesize_pio(src, dst);
  check_stages_valid(r);
  CHECK(pipeline_fidelity(r, src, dst) >= 1.0 - 1e-9);
  double reached = 0.0;
  for (const auto& b : branch_outcomes(flatten_pipeline(r), src)) {
    reached += b.probability * std::norm(dst.amps().dot(b.state.amps()));
  }
  CHECK(reached >= 1.0 - 1e-9);

  CHECK_THROWS_AS(synthesize_pio(basis_state(2, 2, 0, 0), bell()), PreconditionError);
}

TEST_CASE("synthesize_pio across b dimensions") {
  Rng rng(5);
  const PureState src = haar_pure(3, 2, rng);
  const PureState dst = basis_state(3, 4, 1, 2);
  const ChannelPipeline p = synthesize_pio(src, dst);
  CHECK(p.db_in() == 2);
  CHECK(p.db_out() == 4);
  check_stages_valid(p);
  CHECK(pipeline_fidelity(p, src, dst) >= 1.0 - 1e-9);
}

TEST_CASE("property: synthesis succeeds on random majorized pairs") {
  Rng rng(66);
  for (int k = 0; k < 200; ++k) {
    const int da = 2 + rng.index(5);
    const int db = 1 + rng.index(3);
    const PureState dst = haar_pure(da, db, rng);
    const auto x = test::majorized_below(coherence_vectors(dst, VectorMode::a).vec(), rng);
    const PureState src = test::with_pcv(x, db, rng);
    REQUIRE(pio_convertible(src, dst));
    const ChannelPipeline p = synthesize_pio(src, dst);
    CHECK(p.stages().size() <= static_cast<std::size_t>(da + 1));
    check_stages_valid(p);
    CHECK(pipeline_fidelity(p, src, dst) >= 1.0 - 1e-8);
  }
}

TEST_CASE("maximal_state examples") {
  const CVector zero = CVector::Unit(2, 0);
  const PureState m = maximal_state(2, {zero, zero});
  CHECK(std::abs(m.amp(0, 0)) == doctest::Approx(test::kInvSqrt2));
  CHECK(std::abs(m.amp(1, 0)) == doctest::Approx(test::kInvSqrt2));

  std::vector<CVector> ortho;
  for (int i = 0; i < 4; ++i) ortho.push_back(CVector::Unit(4, i));
  const PureState me = maximal_state(4, ortho);
  const ProbVector sch = schmidt_coefficients(me);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sch[i] == doctest::Approx(0.25));

  Rng rng(3);
  const PureState mr = maximal_state(3, {haar_vector(2, rng), haar_vector(2, rng), haar_vector(2, rng)});
  const ProbVector pa = coherence_vectors(mr, VectorMode::a);
  for (std::size_t i = 0; i < 3; ++i) CHECK(pa[i] == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(maximal_state(2, {zero, CVector(2.0 * zero)}), ValidationError);
  CHECK_THROWS_AS(maximal_state(3, {zero, zero}), DimensionError);
}

TEST_CASE("prepare_from_maximal examples") {
  const PureState s = haar_pure(2, 2, 8);
  const DensityMatrix pure = DensityMatrix::from_pure(s);
  const PureState maxi = maximal_state(2, 2);
  const ChannelPipeline pp = prepare_from_maximal(pure);
  CHECK(trace_distance(apply_channel(pp, DensityMatrix::from_pure(maxi)), pure) <= 1e-8);

  const DensityMatrix mm = DensityMatrix::maximally_mixed(2, 2);
  const ChannelPipeline pm = prepare_from_maximal(mm);
  REQUIRE(pm.stages().size() == 1);
  CHECK(is_pio_kraus_set(pm.stages().front()));
  CHECK(trace_distance(apply_channel(pm, DensityMatrix::from_pure(maxi)), mm) <= 1e-8);

  const DensityMatrix g = ginibre_density(3, 2, 3, 11);
  const ChannelPipeline pg = prepare_from_maximal(g);
  CHECK(is_pio_kraus_set(pg.stages().front()));
  CHECK(trace_distance(apply_channel(pg, DensityMatrix::from_pure(maximal_state(3, 2))), g) <= 1e-8);
}

TEST_CASE("flatten_pipeline examples") {
  const KrausSet d = dephasing_channel(2, 2);
  const KrausSet single = flatten_pipeline(ChannelPipeline({d}));
  CHECK(single.size() == d.size());

  Rng rng(2);
  const CMatrix u1 = haar_unitary(4, rng).entries();
  const CMatrix u2 = haar_unitary(4, rng).entries();
  const KrausSet two = flatten_pipeline(ChannelPipeline({unitary_channel(2, 2, u1), unitary_channel(2, 2, u2)}));
  REQUIRE(two.size() == 1);
  CHECK(max_abs_diff(two.operators().front(), u2 * u1) < 1e-14);

  const DensityMatrix rho = ginibre_density(2, 2, 4, rng);
  const KrausSet dd = flatten_pipeline(ChannelPipeline({d, d}));
  CHECK(max_abs_diff(apply_channel(dd, rho).entries(), apply_channel(d, rho).entries()) < 1e-14);

  std::vector<KrausSet> many(13, dephasing_channel(2, 2));
  CHECK_THROWS_AS(flatten_pipeline(ChannelPipeline(many)), DimensionError);
}

TEST_CASE("orthogonalizing_pio examples") {
  const PureState psi = test::embedded({0.5, 0.26, 0.24}, 3);
  const KrausSet u = orthogonalizing_pio(psi);
  REQUIRE(u.size() == 1);
  CHECK(is_pio_kraus_set(u));
  const PureState out(3, 3, u.operators().front() * psi.amps());
  const ProbVector sch = schmidt_coefficients(out);
  CHECK(sch[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sch[1] == doctest::Approx(0.26).epsilon(1e-12));
  CHECK(sch[2] == doctest::Approx(0.24).epsilon(1e-12));

  const PureState prod = basis_state(3, 2, 2, 1);
  const PureState pout(3, 2, orthogonalizing_pio(prod).operators().front() * prod.amps());
  CHECK(schmidt_coefficients(pout)[0] == doctest::Approx(1.0));

  const PureState maxi = maximal_state(2, 2);
  const PureState mout(2, 2, orthogonalizing_pio(maxi).operators().front() * maxi.amps());
  CHECK(schmidt_coefficients(mout)[1] == doctest::Approx(0.5));

  CHECK_THROWS_AS(orthogonalizing_pio(maximal_state(3, 2)), PreconditionError);
}

TEST_CASE("random_pio examples and free-state preservation") {
  PioRandomConfig one;
  one.depth = 1;
  one.only = PioLayerKind::controlled_unitary;
  CHECK(is_pio_kraus_set(random_pio(3, 2, one)));

  Rng rng(40);
  for (int k = 0; k < 200; ++k) {
    const auto [da, db] = test::random_dims(rng, 2, 4);
    PioRandomConfig cfg;
    cfg.n_kraus = 1 + rng.index(3);
    cfg.depth = 1 + rng.index(3);
    cfg.seed = rng.engine()();
    const KrausSet kset = random_pio(da, db, cfg);
    CHECK(kset.completeness_residual() <= 1e-12 * da * db);
    CHECK(is_pio_kraus_set(kset));

    const DensityMatrix free = partial_dephase(ginibre_density(da, db, 1 + rng.index(da * db), rng));
    CHECK(is_partial_incoherent(apply_channel(kset, free)));
  }
  CHECK_THROWS_AS(random_pio(2, 2, PioRandomConfig{0, 1, 0, std::nullopt}), ValidationError);
}

TEST_CASE("property: flattened PIO pipelines stay PIO") {
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    std::vector<KrausSet> stages;
    for (int s = 0; s < 3; ++s) {
      PioRandomConfig cfg;
      cfg.depth = 1;
      cfg.seed = rng.engine()();
      stages.push_back(random_pio(3, 2, cfg));
    }
    CHECK(is_pio_kraus_set(flatten_pipeline(ChannelPipeline(stages))));
  }
}
