#include <benchmark/benchmark.h>

#include "pap/franck_condon.hpp"
#include "pap/scattering.hpp"

using namespace pap;

static void BM_ContinuumWave(benchmark::State& state) {
    const auto x = builtin_x_model(2500.0);
    const double e = units::energy_from_temperature(1e-6 * static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(continuum_wave(x, e, 0));
}
BENCHMARK(BM_ContinuumWave)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ContinuumBoundFc(benchmark::State& state) {
    const auto c = continuum_wave(builtin_x_model(2500.0), units::energy_from_temperature(100e-6), 0);
    const auto b = bound_levels(builtin_a_model(), 1, {-0.3e-3, -0.28e-3}).front();
    for (auto _ : state) benchmark::DoNotOptimize(continuum_bound_fc(c, b));
}
BENCHMARK(BM_ContinuumBoundFc)->Unit(benchmark::kMicrosecond);
