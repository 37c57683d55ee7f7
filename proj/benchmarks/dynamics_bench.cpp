#include <benchmark/benchmark.h>

#include "pap/dynamics.hpp"

using namespace pap;
namespace u = pap::units;

namespace {

const double ns = 1e-9 / u::time_unit_seconds();

LinkageScheme two_state() {
    LinkageScheme s;
    s.states = {{"X4", 0, 0}, {"Ab133", 0, 1.0 / (30 * ns)}};
    s.couplings = {{0, 1, 3.0 * 5.01683845e-4, 0}};
    s.continuum = {{1, 3.0 * 31.5, 1}};
    return s;
}

const std::vector<PulseEnvelope> pulses = {
    {PulseShape::sin_squared, 750 * ns, 850 * ns, u::intensity_to_field(7e3)},
    {PulseShape::sin_squared, 750 * ns, 1450 * ns, u::intensity_to_field(1e4)}};

}  // namespace

static void BM_CoherentSvca(benchmark::State& state) {
    const auto s = two_state();
    const ContinuumPacket pk{u::energy_from_temperature(100e-6), u::energy_from_temperature(70e-6), 1150 * ns};
    for (auto _ : state) benchmark::DoNotOptimize(integrate_svca(s, pulses, pk));
}
BENCHMARK(BM_CoherentSvca)->Unit(benchmark::kMillisecond);

static void BM_FullRwa(benchmark::State& state) {
    LinkageScheme s;
    s.states = {{"1", 0, 0}, {"2", 0, 1.0}};
    s.couplings = {{0, 1, 1.0, 0}};
    s.continuum = {{1, 1.0, 1}};
    const std::vector<PulseEnvelope> p = {{PulseShape::sin_squared, 1.0, 1.1, 3.0},
                                          {PulseShape::sin_squared, 1.0, 1.9, 1.6}};
    IntegrationOptions o;
    o.t_begin = 0.0;
    o.t_end = 3.5;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_full_rwa(s, p, ContinuumPacket{0.0, 2.0, 1.5}, {-n / 2.0, n / 2.0, n}, o));
}
BENCHMARK(BM_FullRwa)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
