#pragma once

#include <functional>

#include "pap/radial_grid.hpp"
#include "pap/spectrum.hpp"

namespace pap::detail {

struct GridPlan {
    bool empty = true;
    GridMap map;
    int base_intervals = 0;
    double r_start = 0.0, r_end = 0.0;
    double r_inner_turn = 0.0, r_outer_turn = 0.0;
};

// Grid for bound states of veff with energies in window. A second curve
// (the upper adiabat of a coupled pair) also limits the step where given.
GridPlan plan_bound_grid(const std::function<double(double)>& veff, double r_lo, EnergyWindow window,
                         const SolverOptions& opt, const std::function<double(double)>& upper = {});

// Inner start for a scattering problem at energy e: WKB exponent >= barrier,
// or r_lo when the potential never gets that high.
double inner_start(const std::function<double(double)>& veff, double r_lo, double r_turn, double e, double mass,
                   double barrier);

// First radius above r_lo where veff < e, found on a log scan up to r_hi.
double first_allowed(const std::function<double(double)>& veff, double r_lo, double r_hi, double e);

// Moves r_start outward until the Numerov weight h^2 q / 12 <= limit at e_low.
double stabilise_start(const std::function<double(double)>& veff, const GridMap& map, double r_start, double r_in,
                       double e_low, double mass, double limit = 0.5);

}  // namespace pap::detail
