#include <benchmark/benchmark.h>

#include "dropchain/spectra.hpp"
#include "dropchain/steady_state.hpp"
#include "dropchain/time_domain.hpp"

namespace
{

using namespace dropchain;

ChainConfig chain(benchmark::State &state) { return uniform_chain(static_cast<int>(state.range(0)), 0.002, 2.0, 2.0, 1.0); }

void BM_SolveSteadyState(benchmark::State &state)
{
    const auto c = chain(state);
    double omega = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(solve_steady_state(c, omega));
        omega += 1e-3;
    }
}
BENCHMARK(BM_SolveSteadyState)->RangeMultiplier(2)->Range(1, 64);

void BM_ClosedForm(benchmark::State &state)
{
    const auto c = chain(state);
    double omega = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(closed_form_transmission(c, omega));
        omega += 1e-3;
    }
}
BENCHMARK(BM_ClosedForm)->RangeMultiplier(2)->Range(1, 64);

void BM_SweepDefaultGrid(benchmark::State &state)
{
    const auto c = chain(state);
    const auto grid = default_grid(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep(c, grid, Method::general_solver, {static_cast<unsigned>(state.range(1))}));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.points()));
}
BENCHMARK(BM_SweepDefaultGrid)->Args({6, 1})->Args({6, 0})->Unit(benchmark::kMillisecond);

void BM_MeasureWindows(benchmark::State &state)
{
    const auto c = chain(state);
    const auto grid = default_grid(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(measure_windows(c, grid, Method::general_solver, {1}));
}
BENCHMARK(BM_MeasureWindows)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_IntegrateToSteadyState(benchmark::State &state)
{
    const auto c = chain(state);
    const auto settings = IntegrationSettings::defaults_for(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_to_steady_state(c, 0.25, settings));
}
BENCHMARK(BM_IntegrateToSteadyState)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
