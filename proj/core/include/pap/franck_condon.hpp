#pragma once

#include <span>
#include <string>
#include <vector>

#include "pap/scattering.hpp"
#include "pap/spectrum.hpp"
#include "pap/units.hpp"

namespace pap {

enum class FcKind { bound_bound, continuum_bound };

struct FcValue {
    double value = 0.0;
    FcKind kind = FcKind::bound_bound;

    // dimensionless, or inverse-sqrt-energy for continuum-bound
    units::Quantity quantity() const;
};

FcValue bound_bound_fc(const BoundState& a, const BoundState& b);
FcValue continuum_bound_fc(const ContinuumState& c, const BoundState& b);

// <f|g> for two sampled functions, grids merged when they differ.
double overlap(const RadialFunction& f, const CubicSpline& f_spline, const RadialFunction& g,
               const CubicSpline& g_spline);

struct FcEntry {
    std::string lower_id;
    std::string upper_id;
    FcValue fc;
};

// Every (lower, upper) pair, lower index varying fastest within an upper row.
std::vector<FcEntry> fc_map(const std::vector<BoundState>& lower, const std::vector<BoundState>& upper);
std::vector<FcEntry> fc_map(const PotentialCurve& lower, std::span<const double> energies,
                            const std::vector<BoundState>& upper, const ScatteringOptions& opt = {});

std::string state_id(const BoundState& s);

}  // namespace pap
