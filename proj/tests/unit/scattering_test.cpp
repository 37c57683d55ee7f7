#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pap/errors.hpp"
#include "pap/franck_condon.hpp"
#include "pap/scattering.hpp"

using namespace pap;

namespace {

const double e100uK = units::energy_from_temperature(100e-6);
const double e1uK = units::energy_from_temperature(1e-6);

double inner_peak(const ContinuumState& c) {
    double m = 0.0;
    for (double r = 10.0; r < 30.0; r += 0.01) m = std::max(m, std::abs(continuum_wavefunction_at(c, r)));
    return m;
}

// Deep A level with its outer turning point near 52 a.u.
const BoundState& probe_level() {
    static const BoundState level = [] {
        const auto lv = bound_levels(builtin_a_model(), 1, {-0.3e-3, -0.28e-3});
        return lv.front();
    }();
    return level;
}

std::vector<double> decade_1_to_10_uK() {
    std::vector<double> es;
    for (int i = 0; i <= 10; ++i) es.push_back(units::energy_from_temperature(1e-6 * std::pow(10.0, i / 10.0)));
    return es;
}

}  // namespace

TEST(Scattering, FreeParticleIsExactlyTrivial) {
    const auto fp = AnalyticPotential::free_particle();
    EXPECT_EQ(phase_shift(fp, e100uK, 0), 0.0);
    EXPECT_EQ(scattering_length(fp).a, 0.0);
}

TEST(Scattering, HardSphere) {
    const double R = 50.0;
    const auto hs = AnalyticPotential::hard_sphere(R);
    const auto c = continuum_wave(hs, e100uK, 0);
    EXPECT_NEAR(c.phase_shift, -c.k * R, 1e-8);
    EXPECT_NEAR(scattering_length(hs).a, R, 1e-3 * R);
}

TEST(Scattering, BuiltinModelsCalibrate) {
    EXPECT_NEAR(scattering_length(builtin_x_model(2500.0)).a, 2500.0, 0.05 * 2500.0);
    EXPECT_NEAR(scattering_length(builtin_x_model(100.0)).a, 100.0, 0.05 * 100.0);
    EXPECT_NEAR(zero_energy_scattering_length(builtin_x_model(2500.0)), 2500.0, 0.05 * 2500.0);
}

TEST(Scattering, EnergyNormalisedAmplitude) {
    const auto c = continuum_wave(builtin_x_model(100.0), e1uK, 0);
    const double expect = std::sqrt(2.0 * units::reduced_mass_rb85 / (std::numbers::pi * c.k));
    EXPECT_NEAR(c.amplitude / expect, 1.0, 1e-12);
    const double lambda = 2.0 * std::numbers::pi / c.k, rb = c.psi.grid->r_back();
    double peak = 0.0;
    for (double r = rb - 3.0 * lambda; r < rb; r += lambda / 2000.0)
        peak = std::max(peak, std::abs(continuum_wavefunction_at(c, r)));
    EXPECT_NEAR(peak / expect, 1.0, 1e-4);
}

TEST(Scattering, ResonanceEnhancesShortRangeAmplitude) {
    const auto res = continuum_wave(builtin_x_model(2500.0), e1uK, 0);
    const auto off = continuum_wave(builtin_x_model(100.0), e1uK, 0);
    EXPECT_GE(inner_peak(res) / inner_peak(off), 10.0);
}

TEST(Scattering, WignerSlopeOffResonance) {
    const auto es = decade_1_to_10_uK();
    const auto ts = threshold_scan(builtin_x_model(100.0), probe_level(), es);
    ASSERT_TRUE(ts.slope);
    EXPECT_NEAR(*ts.slope, 0.25, 0.03);
}

TEST(Scattering, WignerSlopeBreaksNearResonance) {
    const auto es = decade_1_to_10_uK();
    const auto ts = threshold_scan(builtin_x_model(2500.0), probe_level(), es);
    ASSERT_TRUE(ts.slope);
    EXPECT_GT(std::abs(*ts.slope - 0.25), 0.05);
}

TEST(Scattering, SingleEnergyGivesNoFit) {
    const double e[] = {e1uK};
    const auto ts = threshold_scan(builtin_x_model(100.0), probe_level(), e);
    EXPECT_EQ(ts.points.size(), 1u);
    EXPECT_FALSE(ts.slope);
}

TEST(Scattering, NonPositiveEnergyRejected) {
    const auto x = builtin_x_model_at(42.0);
    EXPECT_THROW(continuum_wave(x, 0.0, 0), DomainError);
    EXPECT_THROW(phase_shift(x, -1e-12, 0), DomainError);
    const double unsorted[] = {2e-12, 1e-12};
    EXPECT_THROW(threshold_scan(x, probe_level(), unsorted), DomainError);
}

TEST(Scattering, PhaseShiftSmoothOnLadder) {
    const auto x = builtin_x_model(100.0);
    std::vector<double> d;
    for (int i = 0; i <= 20; ++i) d.push_back(phase_shift(x, e1uK * std::pow(10.0, i / 10.0), 0));
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        const double step = std::remainder(d[i] - d[i - 1], std::numbers::pi);
        const double next = std::remainder(d[i + 1] - d[i], std::numbers::pi);
        EXPECT_LT(std::abs(step), 0.2) << i;
        EXPECT_LT(std::abs(next - step), 0.3 * std::abs(step)) << i;
    }
    // Threshold limit: delta -> -k a.
    const double k = std::sqrt(2.0 * units::reduced_mass_rb85 * e1uK);
    const double a = scattering_length(x).a;
    EXPECT_NEAR(std::remainder(d[0], std::numbers::pi) / (-k * a), 1.0, 0.02);
}
