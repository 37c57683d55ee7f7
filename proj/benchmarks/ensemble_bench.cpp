#include <benchmark/benchmark.h>

#include <cmath>

#include "pap/ensemble.hpp"

using namespace pap;

static void BM_ThermalAverageThresholdLaw(benchmark::State& state) {
    const double kT = units::energy_from_temperature(100e-6);
    ThermalQuadrature q;
    q.cutoff_fraction = 0.01;
    for (auto _ : state)
        benchmark::DoNotOptimize(thermal_average([kT](double e) { return std::pow(e / kT, -0.25); }, kT, q));
}
BENCHMARK(BM_ThermalAverageThresholdLaw);
