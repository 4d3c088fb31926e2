// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "covergeo/distance.hpp"
#include "covergeo/flatnorm.hpp"
#include "covergeo/montecarlo.hpp"
#include "covergeo/shapes.hpp"

using namespace covergeo;

namespace {

struct EdtInput {
  Geometry g;
  std::vector<std::uint8_t> src;
};

EdtInput edt_input(int side) {
  EdtInput in;
  in.g.dims = {side, side, 1};
  in.src.assign(in.g.cell_count(), 0);
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.001);
  for (auto& v : in.src) v = coin(rng);
  in.src[0] = 1;
  return in;
}

void BM_edt_parallel(benchmark::State& st) {
  const EdtInput in = edt_input(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::squared_edt(in.g, in.src));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.g.cell_count()));
}

void BM_edt_serial(benchmark::State& st) {
  const EdtInput in = edt_input(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::squared_edt_serial(in.g, in.src));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.g.cell_count()));
}

TrialConfig trial_config() {
  TrialConfig cfg;
  cfg.r = 18.0;
  cfg.N = 600;
  cfg.trials = 200;
  cfg.seed = 11;
  return cfg;
}

void BM_trials_parallel(benchmark::State& st) {
  const GridSet E = make_disk(32.0, 1.0);
  const TrialConfig cfg = trial_config();
  for (auto _ : st) benchmark::DoNotOptimize(estimate_probability(E, cfg));
}

void BM_trials_serial(benchmark::State& st) {
  const GridSet E = make_disk(32.0, 1.0);
  const TrialConfig cfg = trial_config();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::estimate_probability_serial(E, cfg));
}

const std::vector<double> kLadder{0.05, 0.08, 0.1, 0.15, 0.2, 0.3};

void BM_flatnorm_ladder_parallel(benchmark::State& st) {
  const GridSet E = make_dumbbell(16.0, 40.0, 4.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(flatnorm_ladder(E, kLadder));
}

void BM_flatnorm_ladder_serial(benchmark::State& st) {
  const GridSet E = make_dumbbell(16.0, 40.0, 4.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::flatnorm_ladder_serial(E, kLadder));
}

}  // namespace

BENCHMARK(BM_edt_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_edt_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trials_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trials_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flatnorm_ladder_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_flatnorm_ladder_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
