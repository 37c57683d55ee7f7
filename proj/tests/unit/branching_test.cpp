#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pap/branching.hpp"
#include "pap/errors.hpp"

using namespace pap;

namespace {

// Row led by fc0 whose squares add to `total`, spread evenly over n - 1 other levels.
std::vector<double> row_with(double fc0, double total, int n) {
    std::vector<double> r{fc0};
    const double rest = std::sqrt((total - fc0 * fc0) / (n - 1));
    for (int i = 1; i < n; ++i) r.push_back(i % 2 ? rest : -rest);
    return r;
}

std::vector<int> labels(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST(Branching, CompleteRowGivesSquare) {
    const auto row = row_with(0.27, 1.0, 12);
    const auto t = decay_branching(row, labels(row.size()));
    EXPECT_NEAR(t.entries[0].fraction, 0.27 * 0.27, 1e-14);
    EXPECT_NEAR(t.fc_squared_sum, 1.0, 1e-12);
    EXPECT_FALSE(t.incomplete);
}

TEST(Branching, GroundBranchNearSevenAndAHalfPercent) {
    // A few percent of the decay leaves the bound manifold (bound-free emission).
    const auto row = row_with(0.27, 0.975, 12);
    const auto t = decay_branching(row, labels(row.size()));
    EXPECT_GE(t.entries[0].fraction, 0.073);
    EXPECT_LE(t.entries[0].fraction, 0.075);
    EXPECT_FALSE(t.incomplete);
}

TEST(Branching, DominantQuarterOnSyntheticRow) {
    // One strong overlap (|FC| = 0.5) against a wide spread of weak ones.
    std::vector<double> row;
    for (int v = 0; v < 40; ++v) {
        const double x = (v - 20) / 3.0;
        row.push_back(v == 20 ? 0.5 : 0.12 * std::cos(1.3 * v) * std::exp(-0.02 * x * x));
    }
    const double rest = std::accumulate(row.begin(), row.end(), 0.0, [](double a, double f) { return a + f * f; }) - 0.25;
    for (int v = 0; v < 40; ++v)
        if (v != 20) row[v] *= std::sqrt(0.75 / rest);
    const auto t = decay_branching(row, labels(row.size()));
    EXPECT_EQ(t.dominant().v, 20);
    EXPECT_NEAR(t.dominant().fraction, 0.25, 0.01);
    double second = 0.0;
    for (const auto& e : t.entries)
        if (e.v != 20) second = std::max(second, e.fraction);
    EXPECT_LT(second, 0.4 * t.dominant().fraction);
}

TEST(Branching, SingleLowerState) {
    const double fc[] = {0.4};
    const int v[] = {3};
    const auto t = decay_branching(fc, v);
    EXPECT_DOUBLE_EQ(t.entries[0].fraction, 1.0);
    EXPECT_TRUE(t.incomplete);
    EXPECT_FALSE(t.warnings.empty());
}

TEST(Branching, Errors) {
    const double fc[] = {0.1, 0.2};
    const int v[] = {0};
    EXPECT_THROW(decay_branching(fc, v), DimensionError);
    EXPECT_THROW(decay_branching({}, {}), DomainError);
    const double zeros[] = {0.0, 0.0};
    const int v2[] = {0, 1};
    EXPECT_THROW(decay_branching(zeros, v2), DomainError);
}

TEST(Branching, AccumulationOverHarmonicLadder) {
    // Decay of a displaced oscillator ground state onto a full ladder: weights are Poisson.
    SolverOptions o;
    o.mass = 1000.0;
    const double w = 1e-3;
    const auto lower = bound_levels(AnalyticPotential::harmonic(1000.0, w, 10.0), 0, {0.0, 30.0 * w}, o);
    const auto via = bound_levels(AnalyticPotential::harmonic(1000.0, w, 11.0), 0, {0.0, w}, o);
    const auto t = decay_accumulation(via[0], via[0], lower);
    const double s2 = 0.5;  // s^2 = d^2 m w / 2
    EXPECT_NEAR(t.fc_squared_sum, 1.0, 1e-6);
    for (int v = 0; v < 4; ++v) EXPECT_NEAR(t.entries[v].fraction, std::exp(-s2) * std::pow(s2, v) / std::tgamma(v + 1.0), 1e-6);
}
