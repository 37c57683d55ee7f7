#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pap/dynamics.hpp"
#include "pap/units.hpp"

namespace pap {

// All fields in atomic units; temperature is stored as k_B T.
struct EnsembleSpec {
    double kT = 0.0;
    double density = 0.0;
    double mass = units::reduced_mass_rb85;
    double pulse_duration = 0.0;
    double singlet_fraction = 0.25;
    double trap_length = 0.0;
    double focus_diameter = 0.0;
    std::optional<double> lattice_speed;
    std::optional<double> sequence_duration;
    double branch_fraction = 1.0;
    std::optional<double> claimed_molecules_per_sequence;  // cross-check against the yield

    void validate() const;
};

double impact_parameter(double energy, double mass, int J = 0);

// N = rho pi b^2 v tau.
double collisions_per_pulse(double energy, const EnsembleSpec& spec, int J = 0);

// f = P pi rho tau / (4 m^{3/2} (2E)^{1/2}).
double fraction_per_pulse(double probability, double energy, const EnsembleSpec& spec);

struct WavepacketParams {
    double r_st = 0.0;
    double delta_e = 0.0;
    double f0_sq_peak = 0.0;
};

WavepacketParams wavepacket_params(const EnsembleSpec& spec, double energy, int J = 0);

struct ThermalQuadrature {
    int nodes = 8;               // starting count, doubled until converged
    int max_nodes = 128;
    double tolerance = 1e-4;     // relative change on doubling
    double cutoff_fraction = 0;  // energies below cutoff_fraction * kT are excluded
};

struct ThermalAverage {
    double value = 0.0;
    int nodes = 0;
    double excluded_weight = 0.0;  // Maxwell-Boltzmann weight below the cutoff
    std::vector<double> energies, weights, samples;
};

// (2 / sqrt(pi)) (kT)^{-3/2} integral dE P(E) sqrt(E) exp(-E/kT).
ThermalAverage thermal_average(const std::function<double(double)>& probability, double kT,
                               const ThermalQuadrature& q = {});

struct CampaignBudget {
    double per_sequence_yield = 0.0;
    double per_pulse_rate = 0.0;  // yield x singlet fraction
    double n_sequences = 0.0;
    std::optional<double> removal_interval;
    double sequence_period = 0.0;
    double atoms_in_focus = 0.0;
    double molecules_per_sequence = 0.0;
    double molecules_per_second = 0.0;
    std::optional<double> claimed_molecules_per_second;
    std::vector<std::string> warnings;
};

CampaignBudget campaign_budget(double per_sequence_yield, const EnsembleSpec& spec);

struct EnsembleResult {
    ThermalAverage target;  // of the tracked state's final population
    std::vector<std::string> labels;
    std::vector<double> time;
    std::vector<std::vector<double>> populations;  // thermally weighted, [sample][state]
    std::vector<double> source_power;
    std::vector<double> final_populations;
    std::vector<std::vector<double>> node_final_populations;  // [node][state]
};

// Runs `run_at(E)` on the thermal quadrature nodes (in parallel) and averages
// every population trace. Convergence is judged on state `tracked`.
EnsembleResult run_thermal_ensemble(const std::function<SimulationResult(double)>& run_at, double kT, int tracked,
                                    const ThermalQuadrature& q = {});

}  // namespace pap
