#include "farch/estimation.hpp"
#include "farch/funcspace.hpp"
#include "farch/model.hpp"

#include <benchmark/benchmark.h>

namespace {

farch::FarchParams reference_params(std::size_t m) {
    const farch::Grid grid(m);
    return farch::FarchParams(farch::GridFunction::constant(grid, 0.01), farch::poly16_kernel(grid));
}

void BM_ApplyKernel(benchmark::State& state) {
    const farch::Grid grid(static_cast<std::size_t>(state.range(0)));
    const auto k = farch::poly16_kernel(grid);
    const auto f = farch::GridFunction::from(grid, [](double t) { return t * t; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(farch::apply_kernel(k, f));
    }
}
BENCHMARK(BM_ApplyKernel)->Arg(25)->Arg(50)->Arg(100);

void BM_Eigh(benchmark::State& state) {
    const farch::Grid grid(static_cast<std::size_t>(state.range(0)));
    const auto k = farch::GridKernel::from(grid, [](double t, double s) { return std::min(t, s) - t * s; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(farch::eigh(k));
    }
}
BENCHMARK(BM_Eigh)->Arg(25)->Arg(50)->Arg(100);

void BM_SampleInnovation(benchmark::State& state) {
    const farch::Grid grid(50);
    farch::InnovationSpec spec;
    spec.kind = static_cast<farch::InnovationKind>(state.range(0));
    std::int64_t day = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(farch::sample_innovation(spec, grid, day++));
    }
}
BENCHMARK(BM_SampleInnovation)->Arg(0)->Arg(1)->Arg(2);

void BM_Simulate(benchmark::State& state) {
    const auto params = reference_params(50);
    farch::InnovationSpec spec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(farch::simulate(params, spec, static_cast<std::size_t>(state.range(0)), 500));
    }
}
BENCHMARK(BM_Simulate)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
    const auto params = reference_params(50);
    farch::InnovationSpec spec;
    const auto sim = farch::simulate(params, spec, static_cast<std::size_t>(state.range(0)), 500);
    farch::FitOptions options;
    options.k = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(farch::fit(sim.y, options));
    }
}
BENCHMARK(BM_Fit)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
