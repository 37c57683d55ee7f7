#include "pap/franck_condon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pap/errors.hpp"
#include "pap/parallel.hpp"

namespace pap {

units::Quantity FcValue::quantity() const {
    return {value, kind == FcKind::bound_bound ? units::Dimension::dimensionless
                                               : units::Dimension::inverse_sqrt_energy};
}

namespace {

double same_grid_overlap(const RadialFunction& f, const RadialFunction& g) {
    const auto w = f.grid->weights();
    const std::size_t n = std::min(f.values.size(), g.values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * f.values[i] * g.values[i];
    return s;
}

double trapezoid(const std::vector<double>& r, const CubicSpline& a, const CubicSpline& b, double& scale) {
    double s = 0.0, na = 0.0, nb = 0.0;
    double fa_prev = a(r[0]), fb_prev = b(r[0]);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double fa = a(r[i]), fb = b(r[i]);
        const double h = 0.5 * (r[i] - r[i - 1]);
        s += h * (fa * fb + fa_prev * fb_prev);
        na += h * (fa * fa + fa_prev * fa_prev);
        nb += h * (fb * fb + fb_prev * fb_prev);
        fa_prev = fa;
        fb_prev = fb;
    }
    scale = std::sqrt(na * nb);
    return s;
}

}  // namespace

double overlap(const RadialFunction& f, const CubicSpline& fs, const RadialFunction& g, const CubicSpline& gs) {
    if (f.grid->same_nodes(*g.grid)) return same_grid_overlap(f, g);
    const double lo = std::max(f.grid->r_front(), g.grid->r_front());
    const double hi = std::min(f.grid->r_back(), g.grid->r_back());
    if (!(hi > lo)) throw DomainError("overlap of functions on disjoint grids");

    // Merged node set, then the same set with midpoints inserted.
    std::vector<double> nodes;
    nodes.reserve(f.values.size() + g.values.size() + 2);
    for (const auto* grid : {f.grid.get(), g.grid.get()})
        for (double r : grid->r())
            if (r > lo && r < hi) nodes.push_back(r);
    nodes.push_back(lo);
    nodes.push_back(hi);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return b - a <= 1e-12 * std::max(1.0, std::abs(a)); }),
                nodes.end());
    std::vector<double> fine;
    fine.reserve(2 * nodes.size());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        fine.push_back(nodes[i]);
        fine.push_back(0.5 * (nodes[i] + nodes[i + 1]));
    }
    fine.push_back(nodes.back());

    double scale_coarse = 0.0, scale_fine = 0.0;
    const double coarse = trapezoid(nodes, fs, gs, scale_coarse);
    const double refined = trapezoid(fine, fs, gs, scale_fine);
    const double extrapolated = (4.0 * refined - coarse) / 3.0;
    if (std::abs(extrapolated - refined) > 1e-3 * std::abs(extrapolated) + 1e-7 * scale_fine)
        throw ConvergenceError("overlap quadrature unconverged on refinement (" + std::to_string(refined) + " vs " +
                               std::to_string(extrapolated) + ")");
    return extrapolated;
}

FcValue bound_bound_fc(const BoundState& a, const BoundState& b) {
    if (!a.interpolant || !b.interpolant) throw DomainError("bound state lacks an interpolant");
    // Order the operands canonically so the result is symmetric bit for bit.
    const bool swap = a.psi.grid.get() > b.psi.grid.get();
    const BoundState& x = swap ? b : a;
    const BoundState& y = swap ? a : b;
    double v = overlap(x.psi, *x.interpolant, y.psi, *y.interpolant);
    if (!a.psi_other.empty() && !b.psi_other.empty()) {
        if (!a.psi.grid->same_nodes(*b.psi.grid)) throw DomainError("two-channel states on different grids");
        v += same_grid_overlap({a.psi.grid, a.psi_other}, {b.psi.grid, b.psi_other});
    }
    return {v, FcKind::bound_bound};
}

FcValue continuum_bound_fc(const ContinuumState& c, const BoundState& b) {
    if (!c.interpolant || !b.interpolant) throw DomainError("state lacks an interpolant");
    return {overlap(c.psi, *c.interpolant, b.psi, *b.interpolant), FcKind::continuum_bound};
}

std::string state_id(const BoundState& s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "v%d_J%d", s.v, s.J);
    return buf;
}

std::vector<FcEntry> fc_map(const std::vector<BoundState>& lower, const std::vector<BoundState>& upper) {
    std::vector<FcEntry> out(lower.size() * upper.size());
    parallel_for(out.size(), [&](std::size_t k) {
        const auto& u = upper[k / lower.size()];
        const auto& l = lower[k % lower.size()];
        out[k] = {state_id(l), state_id(u), bound_bound_fc(l, u)};
    });
    return out;
}

std::vector<FcEntry> fc_map(const PotentialCurve& lower, std::span<const double> energies,
                            const std::vector<BoundState>& upper, const ScatteringOptions& opt) {
    std::vector<ContinuumState> waves(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) { waves[i] = continuum_wave(lower, energies[i], 0, opt); });
    std::vector<FcEntry> out(energies.size() * upper.size());
    parallel_for(out.size(), [&](std::size_t k) {
        const auto& u = upper[k / energies.size()];
        const auto& c = waves[k % energies.size()];
        char id[48];
        std::snprintf(id, sizeof id, "E%.6e", c.energy);
        out[k] = {id, state_id(u), continuum_bound_fc(c, u)};
    });
    return out;
}

}  // namespace pap
