// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <algorithm>

#include "locest/bench_harness.hpp"
#include "locest/sample_set.hpp"
#include "locest/sweepline.hpp"
#include "locest/tournament.hpp"

using namespace locest;

namespace {

void BM_FixedGammaCheck(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampleSet s = sample(gaussian(0.0, 1.0), n, 1);
  const double gamma = build_gamma_list(n)[4];
  for (auto _ : state) benchmark::DoNotOptimize(fixed_gamma_check(s.values, gamma, exec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_Estimate(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampleSet s = sample(uniform(0.0, 1.0), n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_sorted(s.values, exec).mu_hat);
}

struct DuelSetup {
  std::vector<double> cand;
  BatchPlan plan;
  LikelihoodTable table;
};

DuelSetup duel_setup(std::size_t n) {
  const DensityModel g = gaussian(0.0, 1.0);
  const std::vector<double> x = trial_sample(g, n, 3);
  DuelSetup d;
  d.plan = batch_plan(n, TournamentConfig{});
  d.cand.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n / 2));
  std::sort(d.cand.begin(), d.cand.end());
  d.table = log_likelihood_table(g, d.cand, x, d.plan);
  return d;
}

void BM_FarthestLossReference(benchmark::State& state) {
  const DuelSetup d = duel_setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(farthest_loss(d.cand, all_duels(d.table, d.plan)));
}

void BM_FarthestLoss(benchmark::State& state, Exec exec) {
  const DuelSetup d = duel_setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(farthest_loss_fast(d.cand, d.table, d.plan, exec));
}

void BM_LikelihoodTable(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DensityModel g = gaussian(0.0, 1.0);
  const std::vector<double> x = trial_sample(g, n, 4);
  const BatchPlan plan = batch_plan(n, TournamentConfig{});
  std::vector<double> cand(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood_table(g, cand, x, plan, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_FixedGammaCheck, serial, Exec::Serial)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FixedGammaCheck, parallel, Exec::Parallel)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Estimate, serial, Exec::Serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Estimate, parallel, Exec::Parallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FarthestLossReference)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FarthestLoss, serial, Exec::Serial)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FarthestLoss, parallel, Exec::Parallel)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LikelihoodTable, serial, Exec::Serial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LikelihoodTable, parallel, Exec::Parallel)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
