#include "pap/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "grid_setup.hpp"
#include "numerov.hpp"
#include "pap/errors.hpp"
#include "pap/franck_condon.hpp"
#include "pap/parallel.hpp"

namespace pap {
namespace {

// Reduces to (-pi/2, pi/2].
double wrap_half_pi(double x) {
    double y = x - M_PI * std::round(x / M_PI);
    if (y <= -M_PI / 2) y += M_PI;
    return y;
}

double riccati_j(int J, double x) { return x * std::sph_bessel(static_cast<unsigned>(J), x); }
double riccati_n(int J, double x) { return x * std::sph_neumann(static_cast<unsigned>(J), x); }

struct Layout {
    GridMap map;
    int base = 0;
    double r_start = 0.0;
};

struct Matched {
    detail::Problem1D problem;
    std::vector<double> psi;
    double alpha = 0.0, beta = 0.0;
    double r_match = 0.0;
};

Layout layout_for(const std::function<double(double)>& veff, const PotentialCurve& p, double e_abs, double k,
                  const ScatteringOptions& opt) {
    const double lambda = 2.0 * M_PI / k;
    const double energy = e_abs - p.asymptote();
    const double r_range = p.range(opt.range_tolerance * energy);
    const double r_end = std::max(r_range, p.r_min()) + opt.wavelengths_beyond * lambda + 0.25 * lambda;
    if (r_end > opt.r_max)
        throw ConfigError("continuum grid would need r = " + std::to_string(r_end) + " > r_max = " +
                              std::to_string(opt.r_max),
                          "GRID_EXTENT");
    double r_in = p.hard_core() ? p.r_min() : detail::first_allowed(veff, p.r_min(), r_end, e_abs);
    if (!std::isfinite(r_in)) r_in = p.r_min();
    double r_start = p.hard_core() ? p.r_min()
                                   : detail::inner_start(veff, p.r_min(), r_in, e_abs, opt.mass, opt.barrier);
    auto wavelength = [&](double r) {
        const double k2 = 2.0 * opt.mass * std::abs(e_abs - veff(r));
        return k2 > 0.0 ? 2.0 * M_PI / std::sqrt(k2) : std::numeric_limits<double>::infinity();
    };
    Layout l;
    l.map = design_grid(wavelength, r_start, r_end, r_in, opt.points_per_wavelength);
    if (!p.hard_core()) {
        const double moved = detail::stabilise_start(veff, l.map, r_start, r_in, e_abs, opt.mass);
        if (moved != r_start) {
            r_start = moved;
            l.map = design_grid(wavelength, r_start, r_end, r_in, opt.points_per_wavelength);
        }
    }
    l.base = base_intervals_for(l.map, r_end);
    l.r_start = r_start;
    return l;
}

Matched propagate(const std::function<double(double)>& veff, const Layout& l, double e_abs, double k, int J,
                  const ScatteringOptions& opt) {
    Matched m;
    m.problem = detail::make_problem(std::make_shared<RadialGrid>(l.map, l.base, opt.refinement), veff, opt.mass,
                                     opt.barrier);
    m.psi = detail::outward_solution(m.problem, e_abs);
    const auto r = m.problem.grid->r();
    const std::size_t i2 = r.size() - 1;
    const double target = r[i2] - 0.5 * M_PI / k;
    const auto it = std::lower_bound(r.begin(), r.end(), target);
    std::size_t i1 = static_cast<std::size_t>(it - r.begin());
    if (i1 > 0 && std::abs(r[i1 - 1] - target) < std::abs(r[i1] - target)) --i1;
    i1 = std::min(i1, i2 - 1);
    const double j1 = riccati_j(J, k * r[i1]), n1 = riccati_n(J, k * r[i1]);
    const double j2 = riccati_j(J, k * r[i2]), n2 = riccati_n(J, k * r[i2]);
    const double det = j1 * n2 - j2 * n1;
    m.alpha = (m.psi[i1] * n2 - m.psi[i2] * n1) / det;
    m.beta = (j1 * m.psi[i2] - j2 * m.psi[i1]) / det;
    m.r_match = r[i2];
    return m;
}

double raw_phase(const Matched& m) { return std::atan2(-m.beta, m.alpha); }

// Phase of a free wave that vanishes at r0.
double wall_phase(int J, double k, double r0) {
    if (r0 <= 0.0) return 0.0;
    return std::atan2(riccati_j(J, k * r0), riccati_n(J, k * r0));
}

struct Solved {
    Matched wave;
    double delta = 0.0;
    double k = 0.0;
};

Solved solve(const PotentialCurve& p, double energy, int J, const ScatteringOptions& opt) {
    if (!(energy > 0.0)) throw DomainError("continuum energy must be positive, got " + std::to_string(energy));
    if (J < 0) throw DomainError("negative J");
    const double asym = p.asymptote();
    if (!std::isfinite(asym)) throw DomainError("potential has no finite asymptote");
    const double e_abs = asym + energy;
    const double k = std::sqrt(2.0 * opt.mass * energy);
    const double cent = J * (J + 1.0) / (2.0 * opt.mass);
    auto veff = [&p, cent](double r) { return p.value(r) + cent / (r * r); };
    auto vfree = [asym, cent](double r) { return asym + cent / (r * r); };

    const Layout l = layout_for(veff, p, e_abs, k, opt);
    Solved s;
    s.k = k;
    s.wave = propagate(veff, l, e_abs, k, J, opt);
    // The same grid run without the potential carries the same asymptotic
    // discretisation phase error; subtracting it leaves the physical shift.
    const Matched ref = propagate(vfree, l, e_abs, k, J, opt);
    s.delta = wrap_half_pi(wall_phase(J, k, l.r_start) + raw_phase(s.wave) - raw_phase(ref));
    return s;
}

}  // namespace

ContinuumState continuum_wave(const PotentialCurve& p, double energy, int J, const ScatteringOptions& opt) {
    Solved s = solve(p, energy, J, opt);
    ContinuumState c;
    c.energy = energy;
    c.J = J;
    c.k = s.k;
    c.phase_shift = s.delta;
    c.amplitude = std::sqrt(2.0 * opt.mass / (M_PI * s.k));
    c.r_match = s.wave.r_match;
    const double amp = std::hypot(s.wave.alpha, s.wave.beta);
    const double scale = (s.wave.alpha < 0.0 ? -1.0 : 1.0) * c.amplitude / amp;
    c.psi.grid = s.wave.problem.grid;
    c.psi.values = std::move(s.wave.psi);
    for (auto& v : c.psi.values) v *= scale;
    const auto r = c.psi.grid->r();
    c.interpolant = std::make_shared<CubicSpline>(std::vector<double>(r.begin(), r.end()), c.psi.values);
    return c;
}

double phase_shift(const PotentialCurve& p, double energy, int J, const ScatteringOptions& opt) {
    return solve(p, energy, J, opt).delta;
}

double continuum_wavefunction_at(const ContinuumState& c, double r) {
    if (!c.interpolant) throw DomainError("continuum state has no interpolant");
    return (*c.interpolant)(r);
}

namespace {

// Value at x = 0 of the polynomial through (x_i, y_i).
double neville_at_zero(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
    return y[0];
}

}  // namespace

ScatteringLength scattering_length(const PotentialCurve& p, const ScatteringLengthOptions& opt) {
    if (opt.rungs < 2) throw DomainError("scattering-length ladder needs at least 2 energies");
    const double top = opt.top_energy > 0.0 ? opt.top_energy : units::to_atomic(1.0, units::Unit::microkelvin).value;
    ScatteringLength out;
    std::vector<double> e(opt.rungs), k(opt.rungs), delta(opt.rungs);
    parallel_for(static_cast<std::size_t>(opt.rungs), [&](std::size_t i) {
        e[i] = top / std::ldexp(1.0, static_cast<int>(i));
        const Solved s = solve(p, e[i], 0, opt.scattering);
        k[i] = s.k;
        delta[i] = s.delta;
    });

    double ka_max = 0.0;
    for (int i = 0; i < opt.rungs; ++i) {
        const double a_run = -std::tan(delta[i]) / k[i];
        out.ladder.push_back({e[i], k[i], delta[i], a_run});
        ka_max = std::max(ka_max, std::abs(k[i] * a_run));
    }

    // Near a pole tan(delta)/k is badly conditioned while k cot(delta) stays
    // smooth; far from one the reverse holds.
    std::vector<double> f(opt.rungs);
    const bool small = ka_max < 0.1;
    for (int i = 0; i < opt.rungs; ++i) f[i] = small ? std::tan(delta[i]) / k[i] : k[i] / std::tan(delta[i]);
    const double full = neville_at_zero(e, f);
    const double part = neville_at_zero({e.end() - 2, e.end()}, {f.end() - 2, f.end()});
    const double resid = std::abs(full - part);

    if (small) {
        out.a = -full;
        out.residual = resid;
    } else {
        if (!(std::abs(full) > resid))
            throw ScatteringLengthError("k cot(delta) extrapolates to zero within its residual; resonance at threshold",
                                        out.ladder);
        out.a = -1.0 / full;
        out.residual = resid / (full * full);
    }
    if (!std::isfinite(out.a)) throw ScatteringLengthError("scattering length is not finite", out.ladder);
    return out;
}

double zero_energy_scattering_length(const PotentialCurve& p, const ScatteringOptions& opt) {
    const double asym = p.asymptote();
    if (!std::isfinite(asym)) throw DomainError("potential has no finite asymptote");
    auto veff = [&p](double r) { return p.value(r); };
    const double r_far = std::max(20.0 * p.range(1e-10), 1000.0);
    double r_in = p.hard_core() ? p.r_min() : detail::first_allowed(veff, p.r_min(), r_far, asym);
    if (!std::isfinite(r_in)) r_in = p.r_min();
    double r_start = p.hard_core() ? p.r_min() : detail::inner_start(veff, p.r_min(), r_in, asym, opt.mass, opt.barrier);
    auto wavelength = [&](double r) {
        const double k2 = 2.0 * opt.mass * std::abs(asym - veff(r));
        return k2 > 0.0 ? 2.0 * M_PI / std::sqrt(k2) : std::numeric_limits<double>::infinity();
    };
    GridMap map = design_grid(wavelength, r_start, r_far, r_in, opt.points_per_wavelength);
    if (!p.hard_core()) {
        const double moved = detail::stabilise_start(veff, map, r_start, r_in, asym, opt.mass);
        if (moved != r_start) map = design_grid(wavelength, moved, r_far, r_in, opt.points_per_wavelength);
    }
    const auto prob = detail::make_problem(std::make_shared<RadialGrid>(map, base_intervals_for(map, r_far), opt.refinement),
                                           veff, opt.mass, opt.barrier);
    const auto psi = detail::outward_solution(prob, asym);
    const auto r = prob.grid->r();
    const std::size_t i2 = r.size() - 1;
    const auto it = std::lower_bound(r.begin(), r.end(), 0.5 * r[i2]);
    const std::size_t i1 = std::min<std::size_t>(static_cast<std::size_t>(it - r.begin()), i2 - 1);
    return r[i2] - psi[i2] * (r[i2] - r[i1]) / (psi[i2] - psi[i1]);
}

ThresholdScan threshold_scan(const PotentialCurve& lower, const BoundState& upper, std::span<const double> energies,
                             const ScatteringOptions& opt) {
    ThresholdScan out;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!(energies[i] > 0.0)) throw DomainError("threshold scan energies must be positive");
        if (i > 0 && !(energies[i] > energies[i - 1])) throw DomainError("threshold scan energies must be sorted");
    }
    out.points.resize(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) {
        const auto c = continuum_wave(lower, energies[i], 0, opt);
        out.points[i] = {energies[i], continuum_bound_fc(c, upper).value};
    });
    if (out.points.size() < 2) return out;
    const double e_lo = out.points.front().energy;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& pt : out.points) {
        if (pt.energy > 10.0 * e_lo * (1.0 + 1e-12)) break;
        const double x = std::log(pt.energy), y = std::log(std::abs(pt.fc));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++n;
    }
    if (n >= 2) out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace pap
