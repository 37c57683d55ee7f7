#include "pap/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pap/errors.hpp"

namespace pap {

double GridMap::r(double x) const {
    double v = r0 + c * x;
    if (stretched) v += c * s * (std::exp((x - x_t) / s) - std::exp(-x_t / s));
    return v;
}

double GridMap::d1(double x) const { return stretched ? c * (1.0 + std::exp((x - x_t) / s)) : c; }
double GridMap::d2(double x) const { return stretched ? c / s * std::exp((x - x_t) / s) : 0.0; }
double GridMap::d3(double x) const { return stretched ? c / (s * s) * std::exp((x - x_t) / s) : 0.0; }

double GridMap::x_of(double rr) const {
    if (!stretched) return (rr - r0) / c;
    if (rr <= r0) return (rr - r0) / c;
    double lo = 0.0, hi = 1.0;
    while (r(hi) < rr) lo = hi, hi *= 2.0;
    // r(hi) may be far past rr on the exponential branch; tighten first.
    for (int i = 0; i < 200 && hi - lo > 1e-3 * (1.0 + lo); ++i) {
        const double mid = 0.5 * (lo + hi);
        (r(mid) < rr ? lo : hi) = mid;
    }
    // g is convex: Newton from the right converges monotonically.
    double x = hi;
    for (int i = 0; i < 100; ++i) {
        const double f = r(x) - rr;
        const double nx = x - f / d1(x);
        if (!(nx > lo && nx <= hi)) break;
        if (std::abs(nx - x) < 1e-13 * std::max(1.0, std::abs(x))) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

RadialGrid::RadialGrid(GridMap map, int base_intervals, int level)
    : map_(map), base_(base_intervals), level_(level), hx_(std::ldexp(1.0, -level)) {
    if (base_intervals < 4) throw DomainError("radial grid needs at least 4 intervals");
    const std::size_t n = static_cast<std::size_t>(base_intervals) * (std::size_t{1} << level) + 1;
    r_.resize(n);
    jac_.resize(n);
    schw_.resize(n);
    w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * hx_;
        r_[i] = map_.r(x);
        const double g1 = map_.d1(x), g2 = map_.d2(x), g3 = map_.d3(x);
        jac_[i] = g1;
        schw_[i] = 0.75 * (g2 / g1) * (g2 / g1) - 0.5 * g3 / g1;
        w_[i] = hx_ * g1;
    }
    w_.front() *= 0.5;
    w_.back() *= 0.5;
}

std::shared_ptr<const RadialGrid> RadialGrid::refined() const {
    return std::make_shared<RadialGrid>(map_, base_, level_ + 1);
}

bool RadialGrid::same_nodes(const RadialGrid& o) const {
    return level_ == o.level_ && base_ == o.base_ && map_.r0 == o.map_.r0 && map_.c == o.map_.c &&
           map_.x_t == o.map_.x_t && map_.s == o.map_.s && map_.stretched == o.map_.stretched;
}

GridMap design_grid(const std::function<double(double)>& wavelength, double r_start, double r_end, double r_resolve,
                    int ppw) {
    if (!(r_end > r_start)) throw DomainError("grid end must exceed grid start");
    r_resolve = std::clamp(r_resolve, r_start, r_end);

    // Sample log-uniformly; the cap keeps the step a modest fraction of r where
    // the local wavelength diverges.
    const int samples = 6000;
    const double base = std::max(r_resolve, 1e-3);
    const double ratio = std::pow(r_end / base, 1.0 / (samples - 1));
    std::vector<double> rs(samples), lam(samples);
    for (int i = 0; i < samples; ++i) {
        rs[i] = base * std::pow(ratio, i);
        const double l = wavelength(rs[i]);
        lam[i] = std::min(std::isfinite(l) ? l : std::numeric_limits<double>::infinity(), 1.5 * rs[i]) / ppw;
    }
    if (r_resolve < base) lam[0] = std::min(lam[0], wavelength(r_resolve) / ppw);

    GridMap m;
    m.r0 = r_start;
    m.c = *std::min_element(lam.begin(), lam.end());
    double r_t = r_start;
    for (int i = 0; i < samples; ++i)
        if (lam[i] < 2.0 * m.c) r_t = rs[i];
    if (r_t >= r_end * 0.999) {
        m.stretched = false;
        return m;
    }
    double s = 1.0;
    for (int i = 0; i < samples; ++i)
        if (rs[i] > r_t) s = std::max(s, (rs[i] - r_t) / (lam[i] - m.c));
    m.s = s;
    m.x_t = (r_t - r_start) / m.c + 3.0 * s;
    return m;
}

int base_intervals_for(const GridMap& map, double r_end) {
    return std::max(8, static_cast<int>(std::ceil(map.x_of(r_end) - 1e-9)));
}

}  // namespace pap
