#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "pap/errors.hpp"
#include "pap/franck_condon.hpp"
#include "pap/spectrum.hpp"

using namespace pap;

namespace {

constexpr double pi = std::numbers::pi;

SolverOptions with_mass(double m) {
    SolverOptions o;
    o.mass = m;
    return o;
}

// Morse levels in closed form: w(v+1/2) - [w(v+1/2)]^2 / (4D), w = a sqrt(2D/m).
double morse_level(int v, double D, double a, double m) {
    const double x = a * std::sqrt(2.0 * D / m) * (v + 0.5);
    return x - x * x / (4.0 * D);
}

double max_orthonormality_defect(const std::vector<BoundState>& lv) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lv.size(); ++i)
        for (std::size_t j = 0; j < lv.size(); ++j)
            worst = std::max(worst, std::abs(bound_bound_fc(lv[i], lv[j]).value - (i == j ? 1.0 : 0.0)));
    return worst;
}

}  // namespace

TEST(Spectrum, HarmonicLadder) {
    const double m = 1000.0, w = 1e-3;
    const auto lv = bound_levels(AnalyticPotential::harmonic(m, w, 10.0), 0, {0.0, 5.0 * w}, with_mass(m));
    ASSERT_EQ(lv.size(), 5u);
    for (const auto& s : lv) {
        EXPECT_NEAR(s.energy, (s.v + 0.5) * w, 1e-9 * w) << s.v;
        EXPECT_EQ(interior_nodes(s), s.v);
    }
}

TEST(Spectrum, MorseLevels) {
    const double D = 0.02, a = 0.5, m = 1000.0;
    const auto lv = bound_levels(AnalyticPotential::morse(D, a, 8.0), 0, {0.0, 0.015}, with_mass(m));
    ASSERT_EQ(lv.size(), 6u);
    for (const auto& s : lv) {
        EXPECT_NEAR(s.energy, morse_level(s.v, D, a, m), 1e-9 * std::abs(morse_level(s.v, D, a, m))) << s.v;
        EXPECT_EQ(interior_nodes(s), s.v);
    }
}

TEST(Spectrum, Orthonormality) {
    const auto lv = bound_levels(AnalyticPotential::morse(0.02, 0.5, 8.0), 0, {0.0, 0.015}, with_mass(1000.0));
    EXPECT_LT(max_orthonormality_defect(lv), 1e-6);
}

TEST(Spectrum, HarmonicGroundStateIsGaussian) {
    const double m = 1000.0, w = 1e-3, r0 = 10.0;
    const auto lv = bound_levels(AnalyticPotential::harmonic(m, w, r0), 0, {0.0, 1.0 * w}, with_mass(m));
    ASSERT_EQ(lv.size(), 1u);
    const double alpha = m * w;
    double err = 0.0;
    for (double r = 7.0; r <= 13.0; r += 0.01) {
        const double exact = std::pow(alpha / pi, 0.25) * std::exp(-0.5 * alpha * (r - r0) * (r - r0));
        err = std::max(err, std::abs(std::abs(wavefunction_at(lv[0], r)) - exact));
    }
    EXPECT_LT(err, 1e-6);
}

TEST(Spectrum, InterpolantNormalisation) {
    const auto lv = bound_levels(AnalyticPotential::morse(0.02, 0.5, 8.0), 0, {0.0, 0.015}, with_mass(1000.0));
    for (const auto& s : lv) {
        // Composite Simpson on the interpolant, independent of the solver's weights.
        const double a = s.psi.grid->r_front(), b = s.psi.grid->r_back();
        const int n = 200000;
        const double h = (b - a) / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double f = std::pow(wavefunction_at(s, a + i * h), 2);
            acc += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
        }
        EXPECT_NEAR(acc * h / 3.0, 1.0, 1e-6) << s.v;
        EXPECT_NEAR(s.psi.integral_of_square(), 1.0, 1e-6) << s.v;
    }
}

TEST(Spectrum, NumerovOrder) {
    const auto seq = level_energy_sequence(AnalyticPotential::morse(0.02, 0.5, 8.0), 0, 3, {0.0, 0.015}, 5,
                                           with_mass(1000.0));
    ASSERT_EQ(seq.size(), 5u);
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        const double slope = std::log2(std::abs((seq[i] - seq[i + 1]) / (seq[i + 1] - seq[i + 2])));
        EXPECT_GE(slope, 3.7) << i;
        EXPECT_LE(slope, 4.3) << i;
    }
}

TEST(Spectrum, ConstantShiftMovesEveryLevel) {
    const auto base = AnalyticPotential::morse(0.02, 0.5, 8.0);
    const double shift = 0.005;
    const AnalyticPotential deeper([base, shift](double r) { return base(r) - shift; }, base.asymptote() - shift,
                                   base.r_min(), false);
    const auto o = with_mass(1000.0);
    const auto a = bound_levels(base, 0, {0.0, 0.015}, o);
    const auto b = bound_levels(deeper, 0, {-shift, 0.015 - shift}, o);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].energy - b[i].energy, shift, 1e-10);
}

TEST(Spectrum, WindowAboveAsymptoteRejected) {
    const auto mo = AnalyticPotential::morse(0.02, 0.5, 8.0);
    EXPECT_THROW(bound_levels(mo, 0, {0.0, 0.03}), DomainError);
    EXPECT_THROW(bound_levels(mo, 0, {0.01, 0.005}), DomainError);
    EXPECT_THROW(bound_levels(mo, -1, {0.0, 0.01}), DomainError);
}

TEST(Spectrum, HaloLevelOfResonantModel) {
    // Universal binding energy 1 / (2 m (a - abar)^2), abar the mean scattering length of a C6 tail.
    const double m = units::reduced_mass_rb85, a = 2500.0;
    const double abar = 2.0 * pi / std::pow(std::tgamma(0.25), 2) * std::pow(2.0 * m * x_model_c6, 0.25);
    const double expect = -1.0 / (2.0 * m * (a - abar) * (a - abar));
    const auto lv = bound_levels(builtin_x_model(a), 0, {-1e-9, -1e-14});
    ASSERT_FALSE(lv.empty());
    EXPECT_NEAR(lv.back().energy / expect, 1.0, 0.05);
    EXPECT_GT(lv.back().outer_turning_point, 100.0);
}

namespace {

double diabat_a(double r) {
    const double x = std::exp(-0.9 * (r - 4.0));
    return 0.01 * (1 - x) * (1 - x) - 0.01;
}
double diabat_b(double r) {
    const double x = std::exp(-0.7 * (r - 5.0));
    return 0.008 * (1 - x) * (1 - x) - 0.006;
}

RadialPotential tabulate(double (*f)(double)) {
    RadialPotential::Params p;
    for (int i = 0; i <= 5600; ++i) {
        const double r = 2.0 + 0.005 * i;
        p.r.push_back(r);
        p.v.push_back(f(r));
    }
    p.c6 = 0.0;
    p.r_interp = 28.0;
    p.asymptote = f(1e3);
    return RadialPotential(p);
}

}  // namespace

TEST(Spectrum, CoupledChannelsMatchFiniteDifference) {
    const double W = 4e-4, m = 20000.0;
    const CoupledPotential cp(tabulate(diabat_a), tabulate(diabat_b), {2.0, 10.0, 20.0, 30.0}, {W, W, W, W});
    const EnergyWindow win{-0.0099, -0.004};
    const auto lv = bound_levels(cp, 0, win, with_mass(m));

    // Fourth-order finite differences on both diabats, dense eigen-solve.
    const int N = 1500;
    const double a = 2.3, b = 14.0, h = (b - a) / (N + 1), k = 1.0 / (2.0 * m * h * h);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < N; ++i) {
            const double r = a + (i + 1) * h;
            const int I = c * N + i;
            H(I, I) = 2.5 * k + (c ? diabat_b(r) : diabat_a(r));
            if (i > 0) H(I, I - 1) = -4.0 / 3.0 * k;
            if (i + 1 < N) H(I, I + 1) = -4.0 / 3.0 * k;
            if (i > 1) H(I, I - 2) = k / 12.0;
            if (i + 2 < N) H(I, I + 2) = k / 12.0;
            if (c == 0) H(I, N + i) = H(N + i, I) = W;
        }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    std::vector<double> fd;
    for (int i = 0; i < 2 * N; ++i)
        if (es.eigenvalues()(i) > win.e_min && es.eigenvalues()(i) < win.e_max) fd.push_back(es.eigenvalues()(i));

    ASSERT_EQ(lv.size(), fd.size());
    for (std::size_t i = 0; i < lv.size(); ++i) EXPECT_NEAR(lv[i].energy, fd[i], 2e-6 * std::abs(fd[i])) << i;
    EXPECT_LT(max_orthonormality_defect(lv), 1e-6);
    for (const auto& s : lv) EXPECT_NEAR(s.channel_weights[0] + s.channel_weights[1], 1.0, 1e-6);
}
