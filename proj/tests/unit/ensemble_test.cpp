#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pap/ensemble.hpp"
#include "pap/errors.hpp"

using namespace pap;
namespace u = pap::units;

namespace {

const double ns = 1e-9 / u::time_unit_seconds();
const double cm = 1e-2 / u::length_unit_meters();
const double um = 1e-6 / u::length_unit_meters();

EnsembleSpec rates_spec() {
    EnsembleSpec s;
    s.kT = u::energy_from_temperature(100e-6);
    s.density = 1e11 / (cm * cm * cm);
    s.pulse_duration = 750 * ns;
    s.singlet_fraction = 0.25;
    s.trap_length = 200 * um;
    s.focus_diameter = 20 * um;
    s.lattice_speed = 0.2 / u::velocity_unit_m_s();
    return s;
}

}  // namespace

TEST(Ensemble, ThermalAverageOfConstant) {
    const auto t = thermal_average([](double) { return 0.37; }, 1.0);
    EXPECT_NEAR(t.value, 0.37, 1e-6 * 0.37);
}

TEST(Ensemble, MeanEnergyIsThreeHalves) {
    const double kT = 3.2e-10;
    const auto t = thermal_average([kT](double e) { return e / kT; }, kT);
    EXPECT_NEAR(t.value, 1.5, 1e-4);
}

TEST(Ensemble, ThresholdLawIntegrandExact) {
    // <x^{-1/4}> = (2/sqrt(pi)) Gamma(5/4).
    const auto t = thermal_average([](double e) { return std::pow(e, -0.25); }, 1.0);
    EXPECT_NEAR(t.value, 2.0 / std::sqrt(std::numbers::pi) * std::tgamma(1.25), 1e-6);
}

TEST(Ensemble, CutoffReportsExcludedWeight) {
    ThermalQuadrature q;
    q.cutoff_fraction = 0.01;
    const auto t = thermal_average([](double) { return 1.0; }, 1.0, q);
    // P(3/2, x) ~ (4/(3 sqrt(pi))) x^{3/2} for small x.
    EXPECT_NEAR(t.excluded_weight, 4.0 / (3.0 * std::sqrt(std::numbers::pi)) * 1e-3, 1e-5);
    EXPECT_LT(t.excluded_weight, 1e-3);
    EXPECT_NEAR(t.value + t.excluded_weight, 1.0, 1e-6);
}

TEST(Ensemble, NonConvergenceIsReported) {
    ThermalQuadrature q;
    q.nodes = 8;
    q.max_nodes = 8;
    EXPECT_THROW(thermal_average([](double e) { return e; }, 1.0, q), ConvergenceError);
}

TEST(Ensemble, FractionPerPulse) {
    const auto s = rates_spec();
    const double f = fraction_per_pulse(0.6, s.kT, s);
    EXPECT_NEAR(f, 4e-7, 0.05 * 4e-7);
    // Independent evaluation of P pi rho tau / (4 m^{3/2} sqrt(2E)).
    const double m = 1823.0 * 85.0 / 2.0;
    EXPECT_NEAR(f, 0.6 * std::numbers::pi * s.density * s.pulse_duration / (4.0 * std::pow(m, 1.5) * std::sqrt(2.0 * s.kT)),
                1e-15 * f);
    EXPECT_NEAR(fraction_per_pulse(0.6, 4.0 * s.kT, s) / f, 0.5, 1e-14);
}

TEST(Ensemble, FractionIsProbabilityTimesCollisions) {
    const auto s = rates_spec();
    for (double e : {0.1 * s.kT, s.kT, 7.0 * s.kT})
        EXPECT_NEAR(fraction_per_pulse(0.3, e, s), 0.3 * collisions_per_pulse(e, s, 0), 1e-14 * fraction_per_pulse(0.3, e, s));
}

TEST(Ensemble, LinearInDensityAndDuration) {
    auto s = rates_spec();
    const double f = fraction_per_pulse(0.6, s.kT, s);
    s.density *= 3.0;
    EXPECT_NEAR(fraction_per_pulse(0.6, s.kT, s) / f, 3.0, 1e-14);
    s.pulse_duration *= 0.5;
    EXPECT_NEAR(fraction_per_pulse(0.6, s.kT, s) / f, 1.5, 1e-14);
    EXPECT_NEAR(collisions_per_pulse(s.kT, s, 1) / collisions_per_pulse(s.kT, s, 0), 9.0, 1e-12);
}

TEST(Ensemble, WavepacketParameters) {
    const auto w = wavepacket_params(rates_spec(), rates_spec().kT);
    EXPECT_NEAR(w.r_st / 4.21e9, 1.0, 0.01);
    EXPECT_NEAR(w.delta_e / 1.07e-17, 1.0, 0.01);
    EXPECT_NEAR(w.f0_sq_peak / 3.8e-17, 1.0, 0.02);
}

TEST(Ensemble, CampaignBudget) {
    auto s = rates_spec();
    const auto b = campaign_budget(2.13e-7, s);
    EXPECT_GE(b.n_sequences, 1.5e7);
    EXPECT_LE(b.n_sequences, 2.5e7);
    EXPECT_NEAR(b.per_pulse_rate, 5.3e-8, 0.5 * 5e-8);
    ASSERT_TRUE(b.removal_interval);
    EXPECT_NEAR(*b.removal_interval * u::time_unit_seconds(), 100e-6, 1e-12);
}

TEST(Ensemble, ClaimedProductionRate) {
    auto s = rates_spec();
    s.lattice_speed.reset();
    s.sequence_duration = 2e-6 / u::time_unit_seconds();
    s.branch_fraction = 0.075;
    s.claimed_molecules_per_sequence = 400.0;
    const auto b = campaign_budget(2.13e-7, s);
    ASSERT_TRUE(b.claimed_molecules_per_second);
    EXPECT_NEAR(*b.claimed_molecules_per_second, 1.5e7, 1e-6 * 1.5e7);
}

TEST(Ensemble, BadInputs) {
    const auto s = rates_spec();
    EXPECT_THROW(campaign_budget(1.0, s), DomainError);
    EXPECT_THROW(campaign_budget(0.0, s), DomainError);
    EXPECT_THROW(fraction_per_pulse(1.2, s.kT, s), DomainError);
    EXPECT_THROW(impact_parameter(0.0, s.mass), DomainError);
    EXPECT_THROW(thermal_average([](double) { return 1.0; }, -1.0), DomainError);
}

TEST(Ensemble, ThermalRunAveragesEveryTrace) {
    // Synthetic member runs with known population P(E) = E / (E + kT).
    const double kT = 1.0;
    auto run = [kT](double e) {
        SimulationResult r;
        r.labels = {"a", "b"};
        r.time = {0.0, 1.0};
        const double p = e / (e + kT);
        r.populations = {{0.0, 0.0}, {p, 1.0 - p}};
        r.source_power = {0.0, 0.0};
        r.final_populations = {p, 1.0 - p};
        return r;
    };
    const auto res = run_thermal_ensemble(run, kT, 0);
    EXPECT_NEAR(res.final_populations[0] + res.final_populations[1], 1.0, 1e-6);
    EXPECT_DOUBLE_EQ(res.final_populations[0], res.target.value);
    EXPECT_THROW(run_thermal_ensemble(run, kT, 5), ConfigError);
}
