#include "pap/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pap/errors.hpp"

namespace pap {

double PotentialCurve::range(double tolerance) const {
    const double asym = asymptote();
    if (!std::isfinite(asym)) return std::numeric_limits<double>::infinity();
    const double lo = std::max(r_min(), 1e-3);
    double last_bad = -1.0;
    for (double r = lo * 1.01; r < 1e7; r *= 1.01)
        if (std::abs(value(r) - asym) > tolerance) last_bad = r;
    if (last_bad < 0.0) return r_min();
    double a = last_bad, b = last_bad * 1.01;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (a + b);
        (std::abs(value(mid) - asym) > tolerance ? a : b) = mid;
    }
    return b;
}

RadialPotential::RadialPotential(Params p) : p_(std::move(p)) {
    if (p_.r.size() != p_.v.size() || p_.r.size() < 4)
        throw DomainError("potential table needs at least 4 (r, V) rows");
    for (std::size_t i = 0; i < p_.r.size(); ++i) {
        if (!std::isfinite(p_.r[i]) || !std::isfinite(p_.v[i]))
            throw DomainError("potential table contains a non-finite value at row " + std::to_string(i));
        if (i > 0 && !(p_.r[i] > p_.r[i - 1]))
            throw DomainError("potential table r column not strictly increasing at row " + std::to_string(i));
    }
    if (p_.r.front() <= 0.0) throw DomainError("potential table must start at r > 0");
    if (!(p_.blend_halfwidth > 0.0)) throw DomainError("blend half-width must be positive");
    if (p_.tail_power < 1) throw DomainError("tail power must be positive");
    if (p_.r_interp - p_.blend_halfwidth < p_.r.front() || p_.r_interp + p_.blend_halfwidth > p_.r.back())
        throw DomainError("blend window [" + std::to_string(p_.r_interp - p_.blend_halfwidth) + ", " +
                          std::to_string(p_.r_interp + p_.blend_halfwidth) + "] leaves the table");
    table_ = CubicSpline(p_.r, p_.v);
}

double RadialPotential::tail(double r) const {
    return p_.asymptote - p_.c6 / std::pow(r, p_.tail_power);
}

double RadialPotential::value(double r) const {
    if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
    if (r < p_.r.front()) throw DomainError("r = " + std::to_string(r) + " below the tabulated range");
    const double lo = p_.r_interp - p_.blend_halfwidth;
    const double hi = p_.r_interp + p_.blend_halfwidth;
    if (r >= hi) return tail(r);
    if (r <= lo) return table_(r);
    const double x = (r - lo) / (hi - lo);
    const double s = x * x * (3.0 - 2.0 * x);
    return (1.0 - s) * table_(r) + s * tail(r);
}

double RadialPotential::range(double tolerance) const {
    const double hi = p_.r_interp + p_.blend_halfwidth;
    if (p_.c6 == 0.0) return hi;
    return std::max(hi, std::pow(std::abs(p_.c6) / tolerance, 1.0 / p_.tail_power));
}

RadialPotential RadialPotential::with_r_interp(double r_interp) const {
    Params q = p_;
    q.r_interp = r_interp;
    return RadialPotential(std::move(q));
}

AnalyticPotential::AnalyticPotential(std::function<double(double)> f, double asymptote, double r_min, bool hard_core)
    : f_(std::move(f)), asymptote_(asymptote), r_min_(r_min), hard_core_(hard_core) {}

double AnalyticPotential::value(double r) const {
    if (r < r_min_ || (r <= 0.0 && r_min_ > 0.0)) throw DomainError("r below potential domain");
    return f_(r);
}

AnalyticPotential AnalyticPotential::harmonic(double mass, double omega, double r0) {
    const double k = mass * omega * omega;
    return AnalyticPotential([=](double r) { return 0.5 * k * (r - r0) * (r - r0); },
                             std::numeric_limits<double>::infinity(), 0.0, false);
}

AnalyticPotential AnalyticPotential::morse(double depth, double a, double r0) {
    return AnalyticPotential(
        [=](double r) {
            const double e = 1.0 - std::exp(-a * (r - r0));
            return depth * e * e;
        },
        depth, 0.0, false);
}

AnalyticPotential AnalyticPotential::lennard_jones(double depth, double sigma) {
    return AnalyticPotential(
        [=](double r) {
            const double s6 = std::pow(sigma / r, 6);
            return 4.0 * depth * (s6 * s6 - s6);
        },
        0.0, 0.5 * sigma, false);
}

AnalyticPotential AnalyticPotential::hard_sphere(double radius) {
    return AnalyticPotential([](double) { return 0.0; }, 0.0, radius, true);
}

AnalyticPotential AnalyticPotential::free_particle() {
    return AnalyticPotential([](double) { return 0.0; }, 0.0, 0.0, true);
}

CoupledPotential::CoupledPotential(RadialPotential a, RadialPotential b, std::vector<double> r, std::vector<double> w)
    : a_(std::move(a)), b_(std::move(b)), w_(std::move(r), std::move(w)) {}

std::array<double, 3> CoupledPotential::matrix(double r) const { return {a_.value(r), b_.value(r), coupling(r)}; }

double CoupledPotential::coupling(double r) const {
    if (r < w_.x_min()) throw DomainError("coupling evaluated below its table");
    if (r >= w_.x_max()) return w_.y().back();
    return w_(r);
}

// Lower adiabatic limit; the coupling does not vanish at large r.
double CoupledPotential::asymptote() const {
    const double a = a_.asymptote(), b = b_.asymptote(), w = w_.y().back();
    return 0.5 * (a + b) - std::hypot(0.5 * (a - b), w);
}

double CoupledPotential::r_min() const { return std::max(a_.r_min(), std::max(b_.r_min(), w_.x_min())); }

double CoupledPotential::range(double tolerance) const {
    return std::max({a_.range(tolerance), b_.range(tolerance), w_.x_max()});
}

}  // namespace pap
