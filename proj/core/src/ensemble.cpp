#include "pap/ensemble.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pap/errors.hpp"
#include "pap/parallel.hpp"
#include "quadrature.hpp"

namespace pap {

void EnsembleSpec::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
    };
    positive(kT, "temperature");
    positive(density, "density");
    positive(mass, "reduced mass");
    if (!(pulse_duration >= 0.0)) throw DomainError("pulse duration must be non-negative");
    if (!(singlet_fraction > 0.0 && singlet_fraction <= 1.0)) throw DomainError("singlet fraction must lie in (0, 1]");
    if (lattice_speed) positive(*lattice_speed, "lattice speed");
}

double impact_parameter(double energy, double mass, int J) {
    if (!(energy > 0.0)) throw DomainError("collision energy must be positive");
    return (J + 0.5) / std::sqrt(2.0 * mass * energy);
}

double collisions_per_pulse(double energy, const EnsembleSpec& spec, int J) {
    const double b = impact_parameter(energy, spec.mass, J);
    const double v = std::sqrt(2.0 * energy / spec.mass);
    return spec.density * M_PI * b * b * v * spec.pulse_duration;
}

double fraction_per_pulse(double probability, double energy, const EnsembleSpec& spec) {
    if (!(probability >= 0.0 && probability <= 1.0)) throw DomainError("probability outside [0, 1]");
    if (!(energy > 0.0)) throw DomainError("collision energy must be positive");
    return probability * M_PI * spec.density * spec.pulse_duration /
           (4.0 * std::pow(spec.mass, 1.5) * std::sqrt(2.0 * energy));
}

WavepacketParams wavepacket_params(const EnsembleSpec& spec, double energy, int J) {
    const double b = impact_parameter(energy, spec.mass, J);
    WavepacketParams w;
    w.r_st = 1.0 / (M_PI * spec.density * b * b);
    w.delta_e = std::sqrt(energy / (2.0 * spec.mass)) / w.r_st;
    w.f0_sq_peak = 2.0 * std::sqrt(M_PI) * w.delta_e;
    return w;
}

namespace {

// Nodes and full weights (Maxwell-Boltzmann factor included) for n points.
// With x = s^4 the weight becomes 4 s^5 exp(-s^4) ds, which keeps P ~ x^{-1/4}
// (the threshold law for an s-wave source) polynomial in s.
constexpr double x_max = 60.0;

ThermalAverage thermal_rule(int n, double kT, double cutoff) {
    ThermalAverage t;
    t.nodes = n;
    const double norm = 2.0 / std::sqrt(M_PI);
    const auto rule = detail::gauss_legendre(n, std::pow(std::max(cutoff, 0.0), 0.25), std::pow(x_max, 0.25));
    for (int i = 0; i < n; ++i) {
        const double s = rule.x[i], x = s * s * s * s;
        t.energies.push_back(x * kT);
        t.weights.push_back(norm * rule.w[i] * 4.0 * s * s * s * s * s * std::exp(-x));
    }
    if (cutoff > 0.0) t.excluded_weight = gsl_sf_gamma_inc_P(1.5, cutoff);
    return t;
}

template <class Eval>
ThermalAverage converge(double kT, const ThermalQuadrature& q, Eval&& eval) {
    if (!(kT > 0.0)) throw DomainError("temperature must be positive");
    if (q.nodes < 1 || q.max_nodes < q.nodes) throw ConfigError("bad quadrature node limits");
    ThermalAverage prev;
    bool have_prev = false;
    for (int n = q.nodes; n <= q.max_nodes; n *= 2) {
        ThermalAverage t = thermal_rule(n, kT, q.cutoff_fraction);
        t.samples = eval(t.energies);
        t.value = 0.0;
        for (int i = 0; i < n; ++i) t.value += t.weights[i] * t.samples[i];
        if (have_prev && std::abs(t.value - prev.value) <= q.tolerance * std::abs(t.value) + 1e-300) return t;
        prev = std::move(t);
        have_prev = true;
    }
    throw ConvergenceError("thermal average not converged at " + std::to_string(q.max_nodes) + " nodes (last " +
                           std::to_string(prev.value) + ")");
}

}  // namespace

ThermalAverage thermal_average(const std::function<double(double)>& probability, double kT,
                               const ThermalQuadrature& q) {
    return converge(kT, q, [&](const std::vector<double>& es) {
        std::vector<double> out(es.size());
        parallel_for(es.size(), [&](std::size_t i) { out[i] = probability(es[i]); });
        return out;
    });
}

EnsembleResult run_thermal_ensemble(const std::function<SimulationResult(double)>& run_at, double kT, int tracked,
                                    const ThermalQuadrature& q) {
    std::vector<SimulationResult> runs;
    EnsembleResult res;
    res.target = converge(kT, q, [&](const std::vector<double>& es) {
        runs.assign(es.size(), {});
        parallel_for(es.size(), [&](std::size_t i) { runs[i] = run_at(es[i]); });
        std::vector<double> out;
        for (const auto& r : runs) {
            if (tracked < 0 || static_cast<std::size_t>(tracked) >= r.final_populations.size())
                throw ConfigError("tracked state index out of range");
            out.push_back(r.final_populations[tracked]);
        }
        return out;
    });

    // Weighted traces, in fixed node order.
    const auto& w = res.target.weights;
    const auto& first = runs.front();
    res.labels = first.labels;
    res.time = first.time;
    const std::size_t ns = first.time.size(), nst = first.labels.size();
    res.populations.assign(ns, std::vector<double>(nst, 0.0));
    res.source_power.assign(ns, 0.0);
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        if (r.time.size() != ns) throw DimensionError("ensemble members sampled on different time grids");
        for (std::size_t i = 0; i < ns; ++i) {
            for (std::size_t j = 0; j < nst; ++j) res.populations[i][j] += w[k] * r.populations[i][j];
            res.source_power[i] += w[k] * r.source_power[i];
        }
        res.node_final_populations.push_back(r.final_populations);
    }
    res.final_populations = res.populations.back();
    return res;
}

CampaignBudget campaign_budget(double yield, const EnsembleSpec& spec) {
    if (!(yield > 0.0 && yield < 1.0)) throw DomainError("per-sequence yield must lie in (0, 1)");
    CampaignBudget b;
    b.per_sequence_yield = yield;
    b.per_pulse_rate = yield * spec.singlet_fraction;
    b.n_sequences = std::ceil(1.0 / b.per_pulse_rate);
    if (spec.lattice_speed && spec.focus_diameter > 0.0) b.removal_interval = spec.focus_diameter / *spec.lattice_speed;
    b.sequence_period = std::max(spec.sequence_duration.value_or(0.0), b.removal_interval.value_or(0.0));
    const double radius = 0.5 * spec.focus_diameter;
    b.atoms_in_focus = spec.density * M_PI * radius * radius * spec.trap_length;
    b.molecules_per_sequence = b.atoms_in_focus * yield;
    if (b.sequence_period > 0.0) {
        const double period_s = b.sequence_period * units::time_unit_seconds();
        b.molecules_per_second = b.molecules_per_sequence * spec.branch_fraction / period_s;
        if (spec.claimed_molecules_per_sequence)
            b.claimed_molecules_per_second = *spec.claimed_molecules_per_sequence * spec.branch_fraction / period_s;
    } else {
        b.warnings.emplace_back("no sequence period: give a sequence duration or a lattice speed");
    }
    if (spec.claimed_molecules_per_sequence && b.molecules_per_sequence > 0.0) {
        const double ratio = *spec.claimed_molecules_per_sequence / b.molecules_per_sequence;
        if (ratio > 10.0 || ratio < 0.1) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "claimed %.3g molecules per sequence vs %.3g from yield x atoms in focus (ratio %.3g)",
                          *spec.claimed_molecules_per_sequence, b.molecules_per_sequence, ratio);
            b.warnings.emplace_back(buf);
        }
    }
    return b;
}

}  // namespace pap
