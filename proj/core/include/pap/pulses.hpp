#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pap/franck_condon.hpp"

namespace pap {

using cplx = std::complex<double>;

enum class PulseShape { sin_squared, gaussian };

// Field envelope eps(t) >= 0. For sin^2 the support is 2*fwhm wide and
// centred on `center`; the FWHM refers to the field, not the intensity.
struct PulseEnvelope {
    PulseShape shape = PulseShape::sin_squared;
    double fwhm = 0.0;
    double center = 0.0;
    double peak_field = 0.0;
    double detuning = 0.0;
    double phase = 0.0;         // laser phase, radians
    std::string polarization;   // label only

    double envelope(double t) const;  // peak-normalised shape
    double field(double t) const { return peak_field * envelope(t); }
    double support_begin() const;
    double support_end() const;
    // Integral of the field over time.
    double area() const;
};

// Gaussian packet of continuum amplitudes, or an explicit table.
struct ContinuumPacket {
    double e0 = 0.0;
    double delta_e = 0.0;
    double t0 = 0.0;
    double scale = 1.0;  // multiplies every b_E(0)
    std::vector<double> table_energy;  // optional explicit b_E(0), energies increasing
    std::vector<cplx> table_amplitude;

    bool explicit_profile() const { return !table_energy.empty(); }
    cplx amplitude(double e) const;  // b_E(0)
    double norm() const;             // integral of |b_E(0)|^2 dE
};

// F0(t) = integral dE b_E(0) exp(i (e_ref - E) t).
cplx source_function(const ContinuumPacket& packet, double t, double e_ref);

// F_corr(tau) = integral over [e_min, e_max] of |mu(E)|^2 exp(i (e_ref - E) tau).
// An empty coupling is the flat profile |mu|^2 = 1, done in closed form.
cplx correlation_kernel(double e_min, double e_max, const std::function<double(double)>& coupling, double tau,
                        double e_ref);

// Average intensity (W/cm^2) of a rectangular pi pulse of the given length.
double pi_pulse_intensity(const FcValue& fc, double duration, double dipole = units::transition_dipole);

}  // namespace pap
