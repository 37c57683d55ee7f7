#pragma once

#include <array>
#include <memory>
#include <vector>

#include "pap/potentials.hpp"
#include "pap/radial_grid.hpp"
#include "pap/spline.hpp"
#include "pap/units.hpp"

namespace pap {

struct EnergyWindow {
    double e_min = 0.0;
    double e_max = 0.0;
};

struct SolverOptions {
    double mass = units::reduced_mass_rb85;
    int points_per_wavelength = 24;
    double barrier = 35.0;     // WKB exponent of the forbidden region kept at each end
    int min_refinements = 2;
    int max_refinements = 4;
    double tol_abs = 1e-10;
    double tol_rel = 1e-6;
    double r_max = 2.0e5;
};

// Samples on a radial grid; values are psi(r_i).
struct RadialFunction {
    GridPtr grid;
    std::vector<double> values;

    double integral_of_square() const;
};

struct BoundState {
    int v = 0;
    int J = 0;
    double energy = 0.0;
    // Channel 0 (the optically bright one for coupled curves); FC factors
    // against single-channel states use this component.
    RadialFunction psi;
    std::vector<double> psi_other;  // channel 1 on the same grid; empty for single-channel curves
    std::array<double, 2> channel_weights{1.0, 0.0};
    int dominant_channel = 0;
    double outer_turning_point = 0.0;
    std::vector<double> energy_by_level;  // raw E(h), E(h/2), ...
    std::shared_ptr<const CubicSpline> interpolant;
};

std::vector<BoundState> bound_levels(const PotentialCurve& p, int J, EnergyWindow window,
                                     const SolverOptions& opt = {});
std::vector<BoundState> bound_levels(const CoupledPotential& p, int J, EnergyWindow window,
                                     const SolverOptions& opt = {});

// Spline interpolation of channel 0; throws DomainError off-grid.
double wavefunction_at(const BoundState& s, double r);

// Sign changes of the dominant channel.
int interior_nodes(const BoundState& s);

// E(h) for one level on successively halved grids, without extrapolation.
std::vector<double> level_energy_sequence(const PotentialCurve& p, int J, int v, EnergyWindow window, int levels,
                                          const SolverOptions& opt = {});

}  // namespace pap
