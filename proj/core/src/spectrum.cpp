#include "pap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grid_setup.hpp"
#include "level_search.hpp"
#include "numerov.hpp"
#include "pap/errors.hpp"
#include "pap/parallel.hpp"

namespace pap {

double RadialFunction::integral_of_square() const {
    const auto w = grid->weights();
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * values[i] * values[i];
    return s;
}

double wavefunction_at(const BoundState& s, double r) {
    if (!s.interpolant) throw DomainError("bound state has no interpolant");
    return (*s.interpolant)(r);
}

int interior_nodes(const BoundState& s) {
    const auto& v = (s.dominant_channel == 1 && !s.psi_other.empty()) ? s.psi_other : s.psi.values;
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    int nodes = 0;
    double last = 0.0;
    for (double x : v) {
        if (std::abs(x) < 1e-7 * peak) continue;
        if (last != 0.0 && (x > 0.0) != (last > 0.0)) ++nodes;
        last = x;
    }
    return nodes;
}

namespace {

using detail::check_window;
using detail::converge_level;
using Ladder = detail::Ladder<detail::Problem1D>;

Ladder::Factory factory(std::function<double(double)> veff, const SolverOptions& opt) {
    return [veff = std::move(veff), m = opt.mass, b = opt.barrier](GridPtr g) {
        return detail::make_problem(std::move(g), veff, m, b);
    };
}

}  // namespace

std::vector<BoundState> bound_levels(const PotentialCurve& p, int J, EnergyWindow window, const SolverOptions& opt) {
    if (J < 0) throw DomainError("negative J");
    const double asym = p.asymptote();
    check_window(window, asym);
    const double cent = J * (J + 1.0) / (2.0 * opt.mass);
    auto veff = [&p, cent](double r) { return p.value(r) + cent / (r * r); };

    const auto plan = detail::plan_bound_grid(veff, p.r_min(), window, opt);
    if (plan.empty) return {};
    Ladder ladder(plan.map, plan.base_intervals, factory(veff, opt), opt.max_refinements);
    const auto& base = ladder.at(0);
    const int n_lo = detail::count_nodes(base, window.e_min);
    const int n_hi = detail::count_nodes(base, window.e_max);
    if (n_hi <= n_lo) return {};

    std::vector<BoundState> out(static_cast<std::size_t>(n_hi - n_lo));
    parallel_for(out.size(), [&](std::size_t idx) {
        const int v = n_lo + static_cast<int>(idx);
        const detail::LevelRun run = converge_level(ladder, v, window, asym, opt, 0);
        const auto& prob = ladder.at(run.finest);
        BoundState s;
        s.v = v;
        s.J = J;
        s.energy = run.extrapolated;
        s.energy_by_level = run.raw;
        s.psi.grid = prob.grid;
        s.psi.values = detail::bound_wavefunction(prob, run.raw.back());
        s.outer_turning_point =
            detail::crossing_radius(prob.grid->r(), prob.veff, detail::outer_turning_index(prob, s.energy), s.energy);
        const auto r = prob.grid->r();
        s.interpolant = std::make_shared<CubicSpline>(std::vector<double>(r.begin(), r.end()), s.psi.values);
        out[idx] = std::move(s);
    });
    // Drop anything the extrapolation pushed out of the window.
    std::erase_if(out, [&](const BoundState& s) { return s.energy > window.e_max || s.energy < window.e_min; });
    return out;
}

std::vector<double> level_energy_sequence(const PotentialCurve& p, int J, int v, EnergyWindow window, int levels,
                                          const SolverOptions& opt) {
    const double asym = p.asymptote();
    check_window(window, asym);
    const double cent = J * (J + 1.0) / (2.0 * opt.mass);
    auto veff = [&p, cent](double r) { return p.value(r) + cent / (r * r); };
    const auto plan = detail::plan_bound_grid(veff, p.r_min(), window, opt);
    if (plan.empty) throw DomainError("no classically allowed region in window");
    Ladder ladder(plan.map, plan.base_intervals, factory(veff, opt), levels - 1);
    return converge_level(ladder, v, window, asym, opt, levels).raw;
}

}  // namespace pap
