#include <benchmark/benchmark.h>

#include "maninkit/fuzz.hpp"
#include "maninkit/numgeom.hpp"

using namespace maninkit;

static void BM_Rank(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat m = random_mat(rng, n, n, -9, 9);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(4)->Arg(8)->Arg(12);

static void BM_Intersect(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Subspace a = canonicalize(random_mat(rng, n / 2 + 1, n), n);
  const Subspace b = canonicalize(random_mat(rng, n / 2 + 1, n), n);
  for (auto _ : state) benchmark::DoNotOptimize(intersect(a, b));
}
BENCHMARK(BM_Intersect)->Arg(6)->Arg(12);

static void BM_SplitToLqb(benchmark::State& state) {
  const auto& entry = catalog_entry("pair_sl2");
  for (auto _ : state) benchmark::DoNotOptimize(split_to_lqb(entry.splittings.front().split));
}
BENCHMARK(BM_SplitToLqb);

static void BM_DrinfeldDouble(benchmark::State& state) {
  const LieQuasiBialgebra q = split_to_lqb(catalog_entry("pair_so3").splittings.front().split);
  for (auto _ : state) benchmark::DoNotOptimize(drinfeld_double(q));
}
BENCHMARK(BM_DrinfeldDouble);

static void BM_RoundTrip(benchmark::State& state) {
  Rng rng(3);
  const StrongMapInstance s = random_strong_map(rng, 5);
  for (auto _ : state) benchmark::DoNotOptimize(check_round_trip(s).pass());
}
BENCHMARK(BM_RoundTrip);

static void BM_Expm(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const num::MatX a = num::MatX::Random(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(num::expm(a).eval());
}
BENCHMARK(BM_Expm)->Arg(3)->Arg(6);

static void BM_Suite(benchmark::State& state, const char* suite, const char* family) {
  num::SuiteConfig cfg;
  cfg.points = 5;
  cfg.convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(num::run_suite(suite, family, cfg).pass());
}
BENCHMARK_CAPTURE(BM_Suite, omega_d_so3, "omega_d", "pair_so3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, quasi_poisson_so3, "quasi_poisson", "pair_so3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, courant_heis3, "courant", "cotangent_heis3")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
