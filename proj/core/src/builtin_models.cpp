#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pap/errors.hpp"
#include "pap/parallel.hpp"
#include "pap/potentials.hpp"
#include "pap/scattering.hpp"

namespace pap {
namespace {

// Short-range X table: Lennard-Jones 12-6 whose r^-6 term is four times the
// physical C6, so where the table hands over to the true tail sets the
// accumulated phase, and with it the scattering length.
constexpr double kXDepth = 0.0195;
constexpr double kXTableC6 = 4.0 * x_model_c6;
constexpr double kXTableLo = 5.8;
constexpr double kXTableHi = 60.0;
constexpr double kXTableStep = 0.01;

// A-like curve: V = D [(re/r)^6 - 2 (re/r)^3].
constexpr double kADepth = 0.027;
constexpr double kARe = 9.1;
constexpr double kATableLo = 5.5;
constexpr double kATableHi = 120.0;
constexpr double kATableStep = 0.01;
constexpr double kARInterp = 100.0;

const RadialPotential::Params& x_table() {
    static const RadialPotential::Params params = [] {
        RadialPotential::Params p;
        const double sigma6 = kXTableC6 / (4.0 * kXDepth);
        const int n = static_cast<int>(std::lround((kXTableHi - kXTableLo) / kXTableStep)) + 1;
        for (int i = 0; i < n; ++i) {
            const double r = kXTableLo + i * kXTableStep;
            const double s6 = sigma6 / std::pow(r, 6);
            p.r.push_back(r);
            p.v.push_back(4.0 * kXDepth * (s6 * s6 - s6));
        }
        p.c6 = x_model_c6;
        p.tail_power = 6;
        return p;
    }();
    return params;
}

double zero_energy_a(double r_interp, double blend) {
    return zero_energy_scattering_length(builtin_x_model_at(r_interp, blend));
}

std::mutex g_cache_mutex;
std::map<std::pair<double, double>, double> g_calibrated;

}  // namespace

RadialPotential builtin_x_model_at(double r_interp, double blend_halfwidth) {
    RadialPotential::Params p = x_table();
    p.r_interp = r_interp;
    p.blend_halfwidth = blend_halfwidth;
    return RadialPotential(std::move(p));
}

RadialPotential builtin_x_model(double target, const BuiltinXOptions& opt) {
    if (!std::isfinite(target) || target == 0.0)
        throw DomainError("scattering-length target must be finite and nonzero");
    {
        std::lock_guard lock(g_cache_mutex);
        const auto it = g_calibrated.find({target, opt.blend_halfwidth});
        if (it != g_calibrated.end()) return builtin_x_model_at(it->second, opt.blend_halfwidth);
    }

    const int n = static_cast<int>(std::floor((opt.scan_hi - opt.scan_lo) / opt.scan_step + 1e-9)) + 1;
    std::vector<double> r(n), a(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        r[i] = opt.scan_lo + static_cast<double>(i) * opt.scan_step;
        a[i] = zero_energy_a(r[i], opt.blend_halfwidth);
    });

    // A crossing of the target, not a pole, flips both a - T and 1/a - 1/T.
    int best = -1;
    for (int i = 0; i + 1 < n; ++i) {
        const bool cross = (a[i] - target) * (a[i + 1] - target) <= 0.0;
        const bool inv = (1.0 / a[i] - 1.0 / target) * (1.0 / a[i + 1] - 1.0 / target) <= 0.0;
        if (!cross || !inv) continue;
        const double mid = 0.5 * (r[i] + r[i + 1]);
        if (best < 0 || std::abs(mid - opt.nominal_r_interp) <
                            std::abs(0.5 * (r[best] + r[best + 1]) - opt.nominal_r_interp))
            best = i;
    }
    if (best < 0)
        throw CalibrationError("no r_interp in [" + std::to_string(opt.scan_lo) + ", " + std::to_string(opt.scan_hi) +
                               "] gives scattering length " + std::to_string(target));

    const double scale = std::abs(target);
    auto f = [&](double x) { return std::atan((zero_energy_a(x, opt.blend_halfwidth) - target) / scale); };
    std::uintmax_t iters = 80;
    const auto root = boost::math::tools::toms748_solve(
        f, r[best], r[best + 1], f(r[best]), f(r[best + 1]),
        [](double lo, double hi) { return std::abs(hi - lo) < 1e-11 * std::abs(lo); }, iters);
    const double r_cal = 0.5 * (root.first + root.second);
    const double achieved = zero_energy_a(r_cal, opt.blend_halfwidth);
    if (std::abs(achieved - target) > 0.05 * scale)
        throw CalibrationError("calibration reached a = " + std::to_string(achieved) + " for target " +
                               std::to_string(target));
    {
        std::lock_guard lock(g_cache_mutex);
        g_calibrated[{target, opt.blend_halfwidth}] = r_cal;
    }
    return builtin_x_model_at(r_cal, opt.blend_halfwidth);
}

RadialPotential builtin_a_model() {
    RadialPotential::Params p;
    const int n = static_cast<int>(std::lround((kATableHi - kATableLo) / kATableStep)) + 1;
    for (int i = 0; i < n; ++i) {
        const double r = kATableLo + i * kATableStep;
        const double x3 = std::pow(kARe / r, 3);
        p.r.push_back(r);
        p.v.push_back(kADepth * (x3 * x3 - 2.0 * x3));
    }
    p.c6 = 2.0 * kADepth * std::pow(kARe, 3);
    p.tail_power = 3;
    p.r_interp = kARInterp;
    p.blend_halfwidth = 1.0;
    return RadialPotential(std::move(p));
}

}  // namespace pap
