#include "grid_setup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pap::detail {

double first_allowed(const std::function<double(double)>& veff, double r_lo, double r_hi, double e) {
    const double lo = std::max(r_lo, 1e-4);
    const int n = 20000;
    const double ratio = std::pow(r_hi / lo, 1.0 / (n - 1));
    double prev = lo;
    for (int i = 0; i < n; ++i) {
        const double r = lo * std::pow(ratio, i);
        if (veff(r) < e) {
            if (i == 0) return r_lo;
            double a = prev, b = r;
            for (int k = 0; k < 80; ++k) {
                const double mid = 0.5 * (a + b);
                (veff(mid) < e ? b : a) = mid;
            }
            return b;
        }
        prev = r;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double inner_start(const std::function<double(double)>& veff, double r_lo, double r_turn, double e, double mass,
                   double barrier) {
    if (r_turn <= r_lo) return r_lo;
    const int n = 20000;
    const double dr = (r_turn - r_lo) / n;
    double acc = 0.0;
    double k_prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double r = r_turn - i * dr;
        const double k = std::sqrt(std::max(0.0, 2.0 * mass * (veff(std::max(r, r_lo > 0 ? r_lo : 1e-12)) - e)));
        acc += 0.5 * (k + k_prev) * dr;
        k_prev = k;
        if (acc >= barrier) return r;
    }
    return r_lo;
}

double stabilise_start(const std::function<double(double)>& veff, const GridMap& map, double r_start, double r_in,
                       double e_low, double mass, double limit) {
    const double h = map.d1(0.0);
    auto weight = [&](double r) { return h * h * 2.0 * mass * (veff(r) - e_low) / 12.0; };
    if (r_start <= 0.0 || weight(r_start) <= limit) return r_start;
    double a = r_start, b = r_in;
    for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (a + b);
        (weight(mid) > limit ? a : b) = mid;
    }
    return b;
}

GridPlan plan_bound_grid(const std::function<double(double)>& veff, double r_lo, EnergyWindow window,
                         const SolverOptions& opt, const std::function<double(double)>& upper) {
    GridPlan plan;
    const double m = opt.mass;
    const double e_max = window.e_max;

    // Locate the allowed region at e_max and the well bottom on a log scan.
    const double lo = std::max(r_lo, 1e-4);
    const int n = 40000;
    const double ratio = std::pow(opt.r_max / lo, 1.0 / (n - 1));
    double r_in = -1.0, r_out = -1.0, v_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double r = lo * std::pow(ratio, i);
        const double v = veff(r);
        v_min = std::min(v_min, v);
        if (v < e_max) {
            if (r_in < 0.0) r_in = r;
            r_out = r;
        }
    }
    if (r_in < 0.0 || v_min >= e_max) return plan;
    if (r_in > lo) r_in = first_allowed(veff, r_lo, r_in * ratio, e_max);
    const bool open_end = r_out >= opt.r_max / ratio;

    double r_start = inner_start(veff, r_lo, r_in, e_max, m, opt.barrier);
    double r_end = opt.r_max;
    if (!open_end) {
        double acc = 0.0, r = r_out, k_prev = 0.0;
        while (r < opt.r_max) {
            const double r_next = std::min(opt.r_max, r * 1.0005 + 1e-3);
            const double k = std::sqrt(std::max(0.0, 2.0 * m * (veff(r_next) - e_max)));
            acc += 0.5 * (k + k_prev) * (r_next - r);
            k_prev = k;
            r = r_next;
            if (acc >= opt.barrier) break;
        }
        r_end = r;
    }

    auto local_length = [&](const std::function<double(double)>& f, double r) {
        const double k2 = 2.0 * m * std::abs(e_max - f(r));
        return k2 > 0.0 ? 2.0 * M_PI / std::sqrt(k2) : std::numeric_limits<double>::infinity();
    };
    auto wavelength = [&](double r) {
        const double l = local_length(veff, r);
        return upper ? std::min(l, local_length(upper, r)) : l;
    };
    GridMap map = design_grid(wavelength, r_start, r_end, r_in, opt.points_per_wavelength);
    const double e_low = std::max(window.e_min, v_min);
    double moved = stabilise_start(veff, map, r_start, r_in, e_low, m);
    if (upper) moved = std::max(moved, stabilise_start(upper, map, r_start, r_in, e_low, m));
    if (moved != r_start) {
        r_start = moved;
        map = design_grid(wavelength, r_start, r_end, r_in, opt.points_per_wavelength);
    }

    plan.empty = false;
    plan.map = map;
    plan.base_intervals = base_intervals_for(map, r_end);
    plan.r_start = r_start;
    plan.r_end = map.r(plan.base_intervals);
    plan.r_inner_turn = r_in;
    plan.r_outer_turn = r_out;
    return plan;
}

}  // namespace pap::detail
