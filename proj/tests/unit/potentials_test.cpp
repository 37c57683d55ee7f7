#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "pap/errors.hpp"
#include "pap/potentials.hpp"
#include "pap/scattering.hpp"

using namespace pap;

namespace {

// One-sided second-order derivative estimates; each uses points on one side only.
double left_slope(const PotentialCurve& p, double r, double h) {
    return (3.0 * p(r) - 4.0 * p(r - h) + p(r - 2.0 * h)) / (2.0 * h);
}
double right_slope(const PotentialCurve& p, double r, double h) {
    return (-3.0 * p(r) + 4.0 * p(r + h) - p(r + 2.0 * h)) / (2.0 * h);
}

std::string lj_table(int rows, double r0, double r1) {
    std::string out;
    for (int i = 0; i < rows; ++i) {
        const double r = r0 + (r1 - r0) * i / (rows - 1);
        const double v = 4.0 * 1e-3 * (std::pow(8.0 / r, 12) - std::pow(8.0 / r, 6));
        out += std::to_string(r) + " " + std::to_string(v) + "\n";
    }
    return out;
}

}  // namespace

TEST(Potentials, TailIsExactBeyondBlend) {
    const auto x = builtin_x_model_at(42.0);
    for (double r : {43.5, 60.0, 1e3, 1e6}) {
        const double expect = x.asymptote() - x_model_c6 / std::pow(r, 6);
        EXPECT_EQ(x(r), expect) << r;
    }
}

TEST(Potentials, BlendMatchesHermiteSwitch) {
    const auto x = builtin_x_model_at(42.0, 1.5);
    for (double r = 40.5; r <= 43.5; r += 0.125) {
        const double t = std::clamp((r - 40.5) / 3.0, 0.0, 1.0);
        const double s = 3.0 * t * t - 2.0 * t * t * t;
        const double expect = (1.0 - s) * x.table_value(r) + s * x.tail(r);
        EXPECT_NEAR(x(r), expect, 1e-15 * std::max(1.0, std::abs(expect))) << r;
    }
}

TEST(Potentials, FirstDerivativeContinuousAcrossBlend) {
    // Small h: inside the switch V''' is large and would swamp the h^2 stencil error.
    const auto x = builtin_x_model_at(42.0);
    const double h = 1e-5;
    for (double r = 40.0; r <= 44.0; r += 0.05) {
        const double l = left_slope(x, r, h), rr = right_slope(x, r, h);
        EXPECT_LT(std::abs(l - rr), 1e-8 * std::abs(rr) + 1e-20) << r;
    }
    // Edges of the switch explicitly.
    for (double r : {41.0, 43.0}) {
        const double l = left_slope(x, r, h), rr = right_slope(x, r, h);
        EXPECT_LT(std::abs(l - rr), 1e-8 * std::abs(rr)) << r;
    }
}

TEST(Potentials, NonPositiveRadiusIsDomainError) {
    const auto x = builtin_x_model_at(42.0);
    EXPECT_THROW(x(0.0), DomainError);
    EXPECT_THROW(x(-1.0), DomainError);
    EXPECT_THROW(AnalyticPotential::morse(0.02, 0.5, 8.0)(-1.0), DomainError);
}

TEST(Potentials, TwoColumnFileGivesSingleChannel) {
    const std::string text = "# LJ test\nc6 = 1000\nr_interp = 18\n" + lj_table(40, 5.0, 20.0);
    const auto loaded = parse_potential(text);
    ASSERT_TRUE(std::holds_alternative<RadialPotential>(loaded));
    const auto& p = std::get<RadialPotential>(loaded);
    EXPECT_EQ(p.tail_power(), 6);
    EXPECT_DOUBLE_EQ(p.r_interp(), 18.0);
    EXPECT_EQ(p(50.0), -1000.0 / std::pow(50.0, 6));
}

TEST(Potentials, FourColumnFileGivesCoupled) {
    std::string text = "c6 = 1000\nasymptote_b = 0.01\n";
    for (int i = 0; i < 20; ++i) {
        const double r = 5.0 + i;
        text += std::to_string(r) + " " + std::to_string(-1.0 / r) + " " + std::to_string(0.01 - 1.0 / r) + " 0.001\n";
    }
    const auto loaded = parse_potential(text);
    ASSERT_TRUE(std::holds_alternative<CoupledPotential>(loaded));
    const auto& cp = std::get<CoupledPotential>(loaded);
    EXPECT_NEAR(cp.coupling(10.0), 0.001, 1e-12);
    EXPECT_NEAR(cp.coupling(500.0), 0.001, 1e-12);
}

TEST(Potentials, FileParseErrors) {
    const std::string table = lj_table(10, 5.0, 20.0);
    EXPECT_THROW(parse_potential(table), ParseError);                          // no c6
    EXPECT_THROW(parse_potential("c6 = 1\nc3 = 1\n" + table), ParseError);     // both tails
    EXPECT_THROW(parse_potential("c6 = 1\nfoo = 2\n" + table), ParseError);    // unknown directive
    EXPECT_THROW(parse_potential("c6 = 1\n5 1\n4 2\n6 3\n7 4\n"), ParseError); // decreasing r
    EXPECT_THROW(parse_potential("c6 = 1\n5 1 2\n"), ParseError);              // 3 columns
    EXPECT_THROW(parse_potential("c6 = 1\n5 1\n6 abc\n"), ParseError);
    try {
        parse_potential("c6 = 1\n5 1\n6 2\n5.5 3\n7 1\n", "bad.pot");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(Potentials, LoadFromDiskAndMissingFile) {
    const auto path = std::filesystem::temp_directory_path() / "pap_potentials_test.pot";
    {
        std::ofstream f(path);
        f << "c6 = 1000\n" << lj_table(30, 5.0, 20.0);
    }
    EXPECT_TRUE(std::holds_alternative<RadialPotential>(load_potential(path.string())));
    std::filesystem::remove(path);
    EXPECT_THROW(load_potential(path.string()), ConfigError);
}

TEST(Potentials, BuiltinModelIsDeterministic) {
    const auto a = builtin_x_model(2500.0);
    const auto b = builtin_x_model(2500.0);
    EXPECT_EQ(a.r_interp(), b.r_interp());
    for (double r : {6.0, 10.0, 30.0, 45.0}) EXPECT_EQ(a(r), b(r));
}

TEST(Potentials, InterpolationRadiusScanCrossesResonance) {
    const auto base = builtin_x_model_at(42.0);
    int sign_changes = 0;
    double prev = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double ri = 36.0 + 0.5 * i;
        const double inv_a = 1.0 / zero_energy_scattering_length(base.with_r_interp(ri));
        if (i > 0 && std::signbit(inv_a) != std::signbit(prev)) ++sign_changes;
        prev = inv_a;
    }
    EXPECT_GE(sign_changes, 1);
}
