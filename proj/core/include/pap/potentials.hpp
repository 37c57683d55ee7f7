#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "pap/spline.hpp"

namespace pap {

// Any single-channel radial curve, in atomic units.
class PotentialCurve {
public:
    virtual ~PotentialCurve() = default;

    virtual double value(double r) const = 0;
    virtual double asymptote() const = 0;
    // Smallest admissible radius. With hard_core() the wavefunction vanishes there.
    virtual double r_min() const = 0;
    virtual bool hard_core() const { return false; }
    // Radius beyond which |V - asymptote| <= tolerance everywhere.
    virtual double range(double tolerance) const;

    double operator()(double r) const { return value(r); }
};

class RadialPotential final : public PotentialCurve {
public:
    struct Params {
        std::vector<double> r, v;  // short-range table
        double c6 = 0.0;           // tail coefficient C_n
        int tail_power = 6;
        double r_interp = 0.0;
        double blend_halfwidth = 1.0;
        double asymptote = 0.0;
    };

    explicit RadialPotential(Params p);

    double value(double r) const override;
    double asymptote() const override { return p_.asymptote; }
    double r_min() const override { return p_.r.front(); }
    double range(double tolerance) const override;

    double tail(double r) const;
    double table_value(double r) const { return table_(r); }

    double c6() const { return p_.c6; }
    int tail_power() const { return p_.tail_power; }
    double r_interp() const { return p_.r_interp; }
    double blend_halfwidth() const { return p_.blend_halfwidth; }
    const Params& params() const { return p_; }

    RadialPotential with_r_interp(double r_interp) const;

private:
    Params p_;
    CubicSpline table_;
};

// Closed-form curves, mostly for tests and oracles.
class AnalyticPotential final : public PotentialCurve {
public:
    AnalyticPotential(std::function<double(double)> f, double asymptote, double r_min, bool hard_core);

    double value(double r) const override;
    double asymptote() const override { return asymptote_; }
    double r_min() const override { return r_min_; }
    bool hard_core() const override { return hard_core_; }

    static AnalyticPotential harmonic(double mass, double omega, double r0);
    static AnalyticPotential morse(double depth, double a, double r0);
    static AnalyticPotential lennard_jones(double depth, double sigma);
    static AnalyticPotential hard_sphere(double radius);
    static AnalyticPotential free_particle();

private:
    std::function<double(double)> f_;
    double asymptote_, r_min_;
    bool hard_core_;
};

// Two diabatic channels with an off-diagonal coupling. Beyond the coupling
// table the coupling stays at its last tabulated value.
class CoupledPotential {
public:
    CoupledPotential(RadialPotential a, RadialPotential b, std::vector<double> r, std::vector<double> w);

    // {V_aa, V_bb, W}
    std::array<double, 3> matrix(double r) const;
    double coupling(double r) const;
    const RadialPotential& channel(int i) const { return i == 0 ? a_ : b_; }
    double asymptote() const;
    double r_min() const;
    double range(double tolerance) const;

private:
    RadialPotential a_, b_;
    CubicSpline w_;
};

using LoadedPotential = std::variant<RadialPotential, CoupledPotential>;

LoadedPotential load_potential(const std::string& path);
LoadedPotential parse_potential(const std::string& text, const std::string& source_name = "<text>");

// Synthetic stand-in curves.
inline constexpr double x_model_c6 = 4426.0;

struct BuiltinXOptions {
    double blend_halfwidth = 1.0;
    double scan_lo = 32.0;
    double scan_hi = 56.0;
    double scan_step = 0.25;
    double nominal_r_interp = 42.0;
};

// X-like curve with r_interp tuned so the s-wave scattering length hits target.
RadialPotential builtin_x_model(double scattering_length_target, const BuiltinXOptions& opt = {});
// Same curve family with r_interp given directly (no calibration).
RadialPotential builtin_x_model_at(double r_interp, double blend_halfwidth = 1.0);
// Single effective excited channel with a -C3/r^3 tail.
RadialPotential builtin_a_model();

}  // namespace pap
