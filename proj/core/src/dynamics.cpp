#include "pap/dynamics.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pap/errors.hpp"
#include "pap/parallel.hpp"

namespace pap {

using State = std::vector<cplx>;

void LinkageScheme::validate(std::size_t n_pulses) const {
    const int n = static_cast<int>(states.size());
    if (n == 0) throw ConfigError("linkage scheme has no states");
    if (!initial.empty() && initial.size() != states.size())
        throw DimensionError("initial amplitudes do not match the state list");
    auto check_state = [&](int s, const char* what) {
        if (s < 0 || s >= n) throw ConfigError(std::string(what) + " references unknown state " + std::to_string(s));
    };
    auto check_pulse = [&](int p, const char* what) {
        if (p < 0 || static_cast<std::size_t>(p) >= n_pulses)
            throw ConfigError(std::string(what) + " references unknown pulse " + std::to_string(p));
    };
    for (const auto& c : couplings) {
        check_state(c.lower, "coupling");
        check_state(c.upper, "coupling");
        check_pulse(c.pulse, "coupling");
        if (c.lower == c.upper) throw ConfigError("coupling links a state to itself");
    }
    std::vector<int> edges_per_pulse(n_pulses, 0);
    for (const auto& e : continuum) {
        check_state(e.state, "continuum edge");
        check_pulse(e.pulse, "continuum edge");
        if (++edges_per_pulse[e.pulse] > 1)
            throw ConfigError("pulse " + std::to_string(e.pulse) + " drives more than one continuum edge");
    }

    // Connectivity, with the continuum as an extra vertex n.
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : couplings) parent[find(c.lower)] = find(c.upper);
    for (const auto& e : continuum) parent[find(e.state)] = find(n);
    const int root = find(0);
    for (int i = 1; i < n; ++i)
        if (find(i) != root) throw ConfigError("linkage graph is not connected (state " + states[i].label + ")");
}

int LinkageScheme::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].label == label) return static_cast<int>(i);
    throw ConfigError("unknown state '" + label + "'");
}

namespace {

// Right-hand side of the amplitude equations. The first n entries of the
// state are the bound amplitudes; a discretised continuum follows when
// present, stored as c_k = sqrt(w_k) b_E(k).
struct System {
    System(const LinkageScheme& s, const std::vector<PulseEnvelope>& p, const ContinuumPacket& k)
        : scheme(s), pulses(p), packet(k), n(s.states.size()) {}

    const LinkageScheme& scheme;
    const std::vector<PulseEnvelope>& pulses;
    const ContinuumPacket& packet;
    std::size_t n = 0;
    bool eliminated = true;
    std::vector<double> e_ref;  // per continuum edge
    std::vector<double> energy, sqrt_w;

    cplx omega(int pulse, double dipole_fc, double t) const {
        const auto& p = pulses[pulse];
        return p.field(t) * dipole_fc * std::exp(cplx(0.0, p.phase));
    }

    void operator()(const State& x, State& dx, double t) const {
        std::fill(dx.begin(), dx.end(), cplx(0.0));
        const cplx i1(0.0, 1.0);
        for (const auto& c : scheme.couplings) {
            const cplx om = omega(c.pulse, c.dipole_fc, t);
            if (om == 0.0) continue;
            const cplx ph = std::exp(cplx(0.0, pulses[c.pulse].detuning * t));
            dx[c.lower] += i1 * std::conj(om * ph) * x[c.upper];
            dx[c.upper] += i1 * om * ph * x[c.lower];
        }
        for (std::size_t j = 0; j < n; ++j) dx[j] -= scheme.states[j].decay_rate * x[j];

        const auto& edges = scheme.continuum;
        if (eliminated) {
            for (std::size_t a = 0; a < edges.size(); ++a) {
                const cplx oa = omega(edges[a].pulse, edges[a].dipole_fc, t);
                if (oa == 0.0) continue;
                for (std::size_t b = 0; b < edges.size(); ++b) {
                    const cplx ob = omega(edges[b].pulse, edges[b].dipole_fc, t);
                    const cplx cross = std::exp(cplx(0.0, (e_ref[a] - e_ref[b]) * t));
                    dx[edges[a].state] -= M_PI * oa * std::conj(ob) * cross * x[edges[b].state];
                }
                dx[edges[a].state] += i1 * oa * source_function(packet, t, e_ref[a]);
            }
            return;
        }
        for (std::size_t a = 0; a < edges.size(); ++a) {
            const cplx oa = omega(edges[a].pulse, edges[a].dipole_fc, t);
            if (oa == 0.0) continue;
            const int s = edges[a].state;
            cplx acc = 0.0;
            for (std::size_t k = 0; k < energy.size(); ++k) {
                const cplx ph = std::exp(cplx(0.0, (e_ref[a] - energy[k]) * t)) * sqrt_w[k];
                acc += ph * x[n + k];
                dx[n + k] += i1 * std::conj(oa * ph) * x[s];
            }
            dx[s] += i1 * oa * acc;
        }
    }
};

std::pair<double, double> run_span(const std::vector<PulseEnvelope>& pulses, const IntegrationOptions& opt) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : pulses) {
        lo = std::min(lo, p.support_begin());
        hi = std::max(hi, p.support_end());
    }
    if (opt.t_begin) lo = *opt.t_begin;
    if (opt.t_end) hi = *opt.t_end;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) throw ConfigError("empty integration interval");
    return {lo, hi};
}

SimulationResult integrate(const System& sys, State x, const IntegrationOptions& opt, double norm_ceiling) {
    namespace odeint = boost::numeric::odeint;
    const auto [t0, t1] = run_span(sys.pulses, opt);
    const int samples = std::max(2, opt.samples);

    SimulationResult res;
    for (const auto& s : sys.scheme.states) res.labels.push_back(s.label);
    res.max_populations.assign(sys.n, 0.0);

    auto record = [&](double t, const State& y) {
        res.time.push_back(t);
        res.amplitudes.emplace_back(y.begin(), y.begin() + sys.n);
        std::vector<double> pop(sys.n);
        double bound = 0.0;
        for (std::size_t j = 0; j < sys.n; ++j) {
            pop[j] = std::norm(y[j]);
            bound += pop[j];
            res.max_populations[j] = std::max(res.max_populations[j], pop[j]);
        }
        double total = bound;
        for (std::size_t k = sys.n; k < y.size(); ++k) total += std::norm(y[k]);
        res.populations.push_back(std::move(pop));
        res.norm_history.push_back(total);
        res.source_power.push_back(
            sys.scheme.continuum.empty() ? 0.0 : std::norm(source_function(sys.packet, t, sys.e_ref[0])));
        if (total > norm_ceiling + opt.norm_tolerance)
            throw NormViolationError("norm " + std::to_string(total) + " exceeds the available " +
                                         std::to_string(norm_ceiling) + " at t = " + std::to_string(t),
                                     total - norm_ceiling);
    };

    auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State, double, State, double>());
    const double span = t1 - t0;
    const double min_dt = opt.min_step_fraction * span;
    stepper.initialize(x, t0, span * 1e-6);
    record(t0, x);
    State y(x.size());
    int next = 1;
    auto sample_time = [&](int i) { return i == samples - 1 ? t1 : t0 + span * i / (samples - 1); };
    try {
        while (next < samples) {
            stepper.do_step(std::cref(sys));
            ++res.steps;
            const double dt = stepper.current_time_step();
            if (dt < min_dt)
                throw StiffnessError("step size fell to " + std::to_string(dt) + " at t = " +
                                         std::to_string(stepper.current_time()),
                                     stepper.current_time(), dt);
            while (next < samples && sample_time(next) <= stepper.current_time()) {
                stepper.calc_state(sample_time(next), y);
                record(sample_time(next), y);
                ++next;
            }
        }
    } catch (const odeint::odeint_error& e) {
        throw StiffnessError(std::string("integrator gave up: ") + e.what(), stepper.current_time(),
                             stepper.current_time_step());
    }

    res.final_populations = res.populations.back();
    if (!sys.eliminated) {
        stepper.calc_state(t1, y);
        for (std::size_t k = sys.n; k < y.size(); ++k) res.continuum_population += std::norm(y[k]);
    }
    return res;
}

std::vector<double> edge_references(const LinkageScheme& s, const std::vector<PulseEnvelope>& pulses,
                                    const ContinuumPacket& packet) {
    std::vector<double> out;
    for (const auto& e : s.continuum) out.push_back(packet.e0 + pulses[e.pulse].detuning);
    return out;
}

State initial_state(const LinkageScheme& s, std::size_t extra) {
    State x(s.states.size() + extra, cplx(0.0));
    std::copy(s.initial.begin(), s.initial.end(), x.begin());
    return x;
}

double bound_norm(const State& x, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::norm(x[j]);
    return s;
}

SimulationResult eliminated_run(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                const ContinuumPacket& packet, const IntegrationOptions& opt) {
    scheme.validate(pulses.size());
    System sys(scheme, pulses, packet);
    sys.e_ref = edge_references(scheme, pulses, packet);
    State x = initial_state(scheme, 0);
    const double ceiling = bound_norm(x, sys.n) + (scheme.continuum.empty() ? 0.0 : packet.norm());
    auto res = integrate(sys, std::move(x), opt, ceiling);
    // The flat-continuum picture needs the pulse bandwidth below the
    // collision energy, where the continuum coupling changes.
    for (const auto& e : scheme.continuum) {
        const auto& p = pulses[e.pulse];
        if (p.fwhm > 0.0 && 1.0 / p.fwhm > packet.e0)
            res.warnings.push_back("pulse " + std::to_string(e.pulse) +
                                   " bandwidth exceeds the collision energy; flat-continuum elimination is doubtful");
    }
    return res;
}

}  // namespace

SimulationResult integrate_svca(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                const ContinuumPacket& packet, const IntegrationOptions& opt) {
    if (scheme.continuum.size() > 1)
        throw ConfigError("the reduced solver takes one continuum edge; use the multi-linkage solver");
    return eliminated_run(scheme, pulses, packet, opt);
}

SimulationResult integrate_multilinkage(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                        const ContinuumPacket& packet, const IntegrationOptions& opt) {
    return eliminated_run(scheme, pulses, packet, opt);
}

SimulationResult integrate_full_rwa(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                    const ContinuumPacket& packet, ContinuumGrid grid, const IntegrationOptions& opt) {
    scheme.validate(pulses.size());
    if (grid.n_points < 2 || !(grid.e_max > grid.e_min)) throw ConfigError("continuum grid needs >= 2 points");
    System sys(scheme, pulses, packet);
    sys.eliminated = false;
    sys.e_ref = edge_references(scheme, pulses, packet);
    // Midpoint nodes: equal weights, no half-weight ends.
    const double w = (grid.e_max - grid.e_min) / grid.n_points;
    State x = initial_state(scheme, static_cast<std::size_t>(grid.n_points));
    for (int k = 0; k < grid.n_points; ++k) {
        const double e = grid.e_min + (k + 0.5) * w;
        sys.energy.push_back(e);
        sys.sqrt_w.push_back(std::sqrt(w));
        x[sys.n + k] = std::sqrt(w) * packet.amplitude(e);
    }
    double initial = 0.0;
    for (const auto& c : x) initial += std::norm(c);
    return integrate(sys, std::move(x), opt, initial);
}

std::vector<PhaseScanPoint> phase_scan(const LinkageScheme& scheme, std::vector<PulseEnvelope> pulses,
                                       const ContinuumPacket& packet, int pulse, std::span<const double> phases,
                                       const IntegrationOptions& opt) {
    if (pulse < 0 || static_cast<std::size_t>(pulse) >= pulses.size()) throw ConfigError("phase scan pulse out of range");
    std::vector<PhaseScanPoint> out(phases.size());
    parallel_for(phases.size(), [&](std::size_t i) {
        auto local = pulses;
        local[pulse].phase = phases[i];
        auto r = integrate_multilinkage(scheme, local, packet, opt);
        out[i] = {phases[i], std::move(r.final_populations)};
    });
    return out;
}

double calibrate_parameter(const std::function<double(double)>& population, double target, double lo, double hi) {
    const double flo = population(lo) - target, fhi = population(hi) - target;
    if (flo * fhi > 0.0)
        throw CalibrationError("target population " + std::to_string(target) + " not bracketed by [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    std::uintmax_t iters = 100;
    const auto root = boost::math::tools::toms748_solve(
        [&](double x) { return population(x) - target; }, lo, hi, flo, fhi,
        [](double a, double b) { return std::abs(b - a) <= 1e-10 * std::max(std::abs(a), std::abs(b)); }, iters);
    return 0.5 * (root.first + root.second);
}

}  // namespace pap
