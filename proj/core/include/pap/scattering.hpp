#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pap/errors.hpp"
#include "pap/potentials.hpp"
#include "pap/spectrum.hpp"

namespace pap {

struct ScatteringOptions {
    double mass = units::reduced_mass_rb85;
    int points_per_wavelength = 48;  // FC settles to ~1e-5 here; 24 leaves ~2e-4
    int refinement = 1;             // grid level used for the returned wave
    double range_tolerance = 1e-7;  // |V - asymptote| <= tolerance * E beyond the range
    double wavelengths_beyond = 3.0;
    double barrier = 35.0;
    double r_max = 5.0e6;
};

struct ContinuumState {
    double energy = 0.0;  // above the asymptote
    int J = 0;
    double k = 0.0;
    double phase_shift = 0.0;  // in (-pi/2, pi/2]
    double amplitude = 0.0;    // sqrt(2m / (pi k))
    double r_match = 0.0;
    RadialFunction psi;
    std::shared_ptr<const CubicSpline> interpolant;
};

ContinuumState continuum_wave(const PotentialCurve& p, double energy, int J, const ScatteringOptions& opt = {});

// Phase shift only; cheaper than continuum_wave.
double phase_shift(const PotentialCurve& p, double energy, int J, const ScatteringOptions& opt = {});

double continuum_wavefunction_at(const ContinuumState& c, double r);

struct ScatteringLengthOptions {
    double top_energy = 0.0;  // 0 selects 1 uK
    int rungs = 3;
    ScatteringOptions scattering{};
};

struct ScatteringLength {
    double a = 0.0;
    double residual = 0.0;
    std::vector<ScatteringLengthError::Rung> ladder;
};

// Extrapolates the s-wave phase shift on a halving energy ladder to k -> 0.
ScatteringLength scattering_length(const PotentialCurve& p, const ScatteringLengthOptions& opt = {});

// Cross-check: zero-energy solution psi ~ (r - a) far out.
double zero_energy_scattering_length(const PotentialCurve& p, const ScatteringOptions& opt = {});

struct ThresholdPoint {
    double energy;
    double fc;
};

struct ThresholdScan {
    std::vector<ThresholdPoint> points;
    std::optional<double> slope;  // d log|FC| / d log E over the lowest decade
};

ThresholdScan threshold_scan(const PotentialCurve& lower, const BoundState& upper, std::span<const double> energies,
                             const ScatteringOptions& opt = {});

}  // namespace pap
