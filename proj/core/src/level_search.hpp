#pragma once

// Node-count bisection and step-halving Richardson, shared by the one- and
// two-channel solvers. A Problem needs count_nodes(p, e) findable by ADL.

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pap/errors.hpp"
#include "pap/radial_grid.hpp"
#include "pap/spectrum.hpp"

namespace pap::detail {

// Problems on a grid hierarchy, built on first use.
template <class Problem>
class Ladder {
public:
    using Factory = std::function<Problem(GridPtr)>;

    Ladder(GridMap map, int base, Factory make, int max_level)
        : map_(map), base_(base), make_(std::move(make)), flags_(max_level + 1), problems_(max_level + 1) {}

    const Problem& at(int level) {
        std::call_once(flags_[level],
                       [&] { problems_[level] = make_(std::make_shared<RadialGrid>(map_, base_, level)); });
        return problems_[level];
    }

private:
    GridMap map_;
    int base_;
    Factory make_;
    std::vector<std::once_flag> flags_;
    std::vector<Problem> problems_;
};

template <class Problem>
double bisect_level(const Problem& p, int v, double lo, double hi, double scale) {
    const double tol = 1e-13 * std::max(scale, 1e-300);
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (count_nodes(p, mid) <= v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

template <class Problem>
double bracketed_level(const Problem& p, int v, double guess, double width, double scale) {
    double lo = guess - width, hi = guess + width;
    double d = width;
    for (int i = 0; i < 200 && count_nodes(p, lo) > v; ++i) lo -= (d *= 2.0);
    d = width;
    for (int i = 0; i < 200 && count_nodes(p, hi) <= v; ++i) hi += (d *= 2.0);
    return bisect_level(p, v, lo, hi, scale);
}

struct LevelRun {
    std::vector<double> raw;
    double extrapolated = 0.0;
    int finest = 0;
};

// fixed_levels > 0 runs exactly that many grids with no convergence test.
template <class Problem>
LevelRun converge_level(Ladder<Problem>& ladder, int v, EnergyWindow w, double asym, const SolverOptions& opt,
                        int fixed_levels) {
    LevelRun run;
    const double span = w.e_max - w.e_min;
    auto scale_of = [&](double e) { return std::isfinite(asym) ? std::abs(e - asym) : std::abs(e); };
    run.raw.push_back(
        bisect_level(ladder.at(0), v, w.e_min, w.e_max, std::max(scale_of(w.e_max), scale_of(w.e_min))));
    const int top = fixed_levels > 0 ? fixed_levels - 1 : opt.max_refinements;
    for (int k = 1; k <= top; ++k) {
        const double prev = run.raw.back();
        double width = k >= 2 ? 4.0 * std::abs(prev - run.raw[k - 2]) : 1e-4 * span;
        width = std::max(width, 1e-12 * std::max(scale_of(prev), 1e-300));
        run.raw.push_back(bracketed_level(ladder.at(k), v, prev, width, scale_of(prev)));
        const double diff = run.raw[k] - run.raw[k - 1];
        run.extrapolated = run.raw[k] + diff / 15.0;
        run.finest = k;
        if (fixed_levels > 0) continue;
        const double tol = std::max(opt.tol_abs, opt.tol_rel * std::abs(run.raw[k]));
        if (k >= opt.min_refinements && std::abs(diff) / 15.0 < tol) return run;
    }
    if (fixed_levels > 0) return run;
    throw ConvergenceError("level v=" + std::to_string(v) + " not converged after " +
                           std::to_string(opt.max_refinements) + " refinements (last change " +
                           std::to_string(std::abs(run.raw.back() - run.raw[run.raw.size() - 2]) / 15.0) + " a.u.)");
}

inline void check_window(EnergyWindow w, double asym) {
    if (!(w.e_max > w.e_min)) throw DomainError("energy window is empty");
    if (w.e_max > asym)
        throw DomainError("energy window reaches above the asymptote (" + std::to_string(w.e_max) + " > " +
                          std::to_string(asym) + ")");
}

// Linear interpolation of the outermost crossing of veff with e.
inline double crossing_radius(std::span<const double> r, const std::vector<double>& veff, std::size_t i, double e) {
    if (i == 0 || i + 1 >= r.size()) return r[i];
    const double v0 = veff[i] - e, v1 = veff[i + 1] - e;
    if (v1 == v0) return r[i];
    return r[i] + (r[i + 1] - r[i]) * (-v0) / (v1 - v0);
}

}  // namespace pap::detail
