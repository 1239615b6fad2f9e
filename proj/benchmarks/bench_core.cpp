#include <benchmark/benchmark.h>

#include "pcoh/entanglement.hpp"
#include "pcoh/majorization_exact.hpp"
#include "pcoh/partial_coherence.hpp"
#include "pcoh/pio.hpp"
#include "pcoh/random.hpp"

using namespace pcoh;

static void BM_MajorizationFloat(benchmark::State& state) {
  Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  const ProbVector x = random_simplex(d, rng);
  const ProbVector y = random_simplex(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(majorization_slack(x, y));
}
BENCHMARK(BM_MajorizationFloat)->Arg(4)->Arg(64)->Arg(1024);

static void BM_CatalystExact(benchmark::State& state) {
  const auto src = RationalProbVector::parse({"0.4", "0.4", "0.15", "0.05"});
  const auto dst = RationalProbVector::parse({"0.5", "0.26", "0.24", "0"});
  const auto cat = RationalProbVector::parse({"0.6", "0.4"});
  for (auto _ : state) benchmark::DoNotOptimize(is_catalyst(cat, src, dst));
}
BENCHMARK(BM_CatalystExact);

static void BM_PcohPure(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PureState s = haar_pure(d, d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pcoh_pure(s, scf("shannon"), Party::a));
}
BENCHMARK(BM_PcohPure)->Arg(2)->Arg(4)->Arg(8);

static void BM_SynthesizePio(benchmark::State& state) {
  const int da = static_cast<int>(state.range(0));
  const PureState dst = haar_pure(da, 2, 3);
  const PureState src = maximal_state(da, 2);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_pio(src, dst));
}
BENCHMARK(BM_SynthesizePio)->Arg(3)->Arg(5)->Arg(8);

static void BM_EntMixedTwoQubit(benchmark::State& state) {
  const DensityMatrix rho = ginibre_density(2, 2, 2, 4);
  RoofConfig cfg;
  cfg.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ent_mixed(rho, scf("shannon"), cfg).value);
}
BENCHMARK(BM_EntMixedTwoQubit)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
