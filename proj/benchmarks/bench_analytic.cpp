#include <benchmark/benchmark.h>

#include "compplan/analytic.hpp"
#include "compplan/geometry.hpp"
#include "compplan/planner.hpp"

using namespace compplan;

static void BM_LognormalFit(benchmark::State& state) {
    const CoopRegion region = build_coop_region(3, 390.0);
    const std::vector<double> d = distances_to_bss(worst_point(region), region);
    const LinkBudget budget;
    for (auto _ : state) benchmark::DoNotOptimize(snr_lognormal_fit(d, budget));
}
BENCHMARK(BM_LognormalFit);

static void BM_WorstUserRcp(benchmark::State& state) {
    const CoopRegion region = build_coop_region(3, 390.0);
    const LinkBudget budget;
    for (auto _ : state) benchmark::DoNotOptimize(worst_user_rcp(1.0, region, 3, budget));
}
BENCHMARK(BM_WorstUserRcp);

static void BM_ErgodicClosedForm(benchmark::State& state) {
    const ProductSnrParams p{5.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(ergodic_sum_rate(p));
}
BENCHMARK(BM_ErgodicClosedForm);

static void BM_ErgodicQuadrature(benchmark::State& state) {
    const ProductSnrParams p{5.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(ergodic_sum_rate_quadrature(p));
}
BENCHMARK(BM_ErgodicQuadrature);

static void BM_RequiredDensity(benchmark::State& state) {
    PlanQuery q;
    q.budget.antennas_per_bs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(required_density(q));
}
BENCHMARK(BM_RequiredDensity);
