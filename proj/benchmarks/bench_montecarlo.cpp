#include <benchmark/benchmark.h>

#include "compplan/montecarlo.hpp"

using namespace compplan;

namespace {

TrialConfig worst_point_config(int order, int users, int antennas, long trials) {
    TrialConfig tc;
    tc.region = build_coop_region(order, 390.0);
    tc.user_positions.assign(static_cast<std::size_t>(users), worst_point(tc.region));
    tc.budget.antennas_per_bs = antennas;
    tc.trials = trials;
    return tc;
}

}  // namespace

static void BM_RateCampaign(benchmark::State& state) {
    const TrialConfig tc = worst_point_config(3, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                              10'000);
    for (auto _ : state) benchmark::DoNotOptimize(run_rate_campaign(tc));
    state.SetItemsProcessed(state.iterations() * tc.trials);
}
BENCHMARK(BM_RateCampaign)->Args({3, 1})->Args({3, 4})->Args({12, 4})->Unit(benchmark::kMillisecond);

static void BM_ZfFilter(benchmark::State& state) {
    const TrialConfig tc = worst_point_config(3, 3, 1, 1);
    RngStream rng(1, 0);
    const ChannelMatrix h = sample_channel(tc.region, tc.user_positions, tc.budget, rng);
    for (auto _ : state) benchmark::DoNotOptimize(zf_filter(h));
}
BENCHMARK(BM_ZfFilter);

BENCHMARK_MAIN();
