#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pap/pulses.hpp"

namespace pap {

struct BoundLevelSpec {
    std::string label;
    double energy = 0.0;      // bookkeeping; detunings live on the pulses
    double decay_rate = 0.0;  // amplitude decay: b' = ... - decay_rate b
};

// Bound-bound link driven by `pulse`: Omega = eps(t) * dipole_fc * e^{i phase}.
struct BoundCoupling {
    int lower = 0;
    int upper = 1;
    double dipole_fc = 0.0;
    int pulse = 0;
};

// Continuum -> bound link, dipole_fc in energy^-1/2.
struct ContinuumEdge {
    int state = 0;
    double dipole_fc = 0.0;
    int pulse = 0;
};

struct LinkageScheme {
    std::vector<BoundLevelSpec> states;
    std::vector<BoundCoupling> couplings;
    std::vector<ContinuumEdge> continuum;
    std::vector<cplx> initial;  // empty: all bound amplitudes start at zero

    // Index checks, one continuum edge per pulse, connectivity.
    void validate(std::size_t n_pulses) const;
    int index_of(const std::string& label) const;
};

struct IntegrationOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    int samples = 1001;
    std::optional<double> t_begin, t_end;  // default: union of the pulse supports
    double norm_tolerance = 1e-4;
    double min_step_fraction = 1e-14;  // of the run length
};

struct SimulationResult {
    std::vector<std::string> labels;
    std::vector<double> time;
    std::vector<std::vector<cplx>> amplitudes;     // [sample][state]
    std::vector<std::vector<double>> populations;  // [sample][state]
    std::vector<double> source_power;              // |F0(t)|^2 of the first continuum edge
    std::vector<double> norm_history;              // bound, plus continuum for the full system
    std::vector<double> final_populations;
    std::vector<double> max_populations;
    double continuum_population = 0.0;  // final, full system only
    long steps = 0;
    std::vector<std::string> warnings;
};

// Continuum eliminated under the flat-continuum approximation. At most one
// continuum edge.
SimulationResult integrate_svca(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                const ContinuumPacket& packet, const IntegrationOptions& opt = {});

struct ContinuumGrid {
    double e_min = 0.0;
    double e_max = 0.0;
    int n_points = 400;
};

// Bound amplitudes plus a discretised continuum, no elimination.
SimulationResult integrate_full_rwa(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                    const ContinuumPacket& packet, ContinuumGrid grid,
                                    const IntegrationOptions& opt = {});

// Any linkage graph (several continuum edges, several finals).
SimulationResult integrate_multilinkage(const LinkageScheme& scheme, const std::vector<PulseEnvelope>& pulses,
                                        const ContinuumPacket& packet, const IntegrationOptions& opt = {});

struct PhaseScanPoint {
    double phase = 0.0;
    std::vector<double> final_populations;
};

// Sweeps the phase of one pulse.
std::vector<PhaseScanPoint> phase_scan(const LinkageScheme& scheme, std::vector<PulseEnvelope> pulses,
                                       const ContinuumPacket& packet, int pulse, std::span<const double> phases,
                                       const IntegrationOptions& opt = {});

// Root of population(x) = target for x in [lo, hi] (e.g. a bound-bound FC).
double calibrate_parameter(const std::function<double(double)>& population, double target, double lo, double hi);

}  // namespace pap
