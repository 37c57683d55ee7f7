#include "pap/pulses.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "pap/errors.hpp"

namespace pap {
namespace {

constexpr double kFourLn2 = 2.772588722239781;  // 4 ln 2
constexpr double kGaussianReach = 3.0;          // support half-width in FWHM

}  // namespace

double PulseEnvelope::envelope(double t) const {
    if (fwhm <= 0.0) return 0.0;
    if (shape == PulseShape::gaussian) {
        const double x = (t - center) / fwhm;
        return std::exp(-kFourLn2 * x * x);
    }
    const double total = 2.0 * fwhm;
    const double x = t - (center - fwhm);
    if (x <= 0.0 || x >= total) return 0.0;
    const double s = std::sin(M_PI * x / total);
    return s * s;
}

double PulseEnvelope::support_begin() const {
    return center - (shape == PulseShape::gaussian ? kGaussianReach : 1.0) * fwhm;
}

double PulseEnvelope::support_end() const {
    return center + (shape == PulseShape::gaussian ? kGaussianReach : 1.0) * fwhm;
}

double PulseEnvelope::area() const {
    if (shape == PulseShape::gaussian) return peak_field * fwhm * std::sqrt(M_PI / kFourLn2);
    return peak_field * fwhm;
}

cplx ContinuumPacket::amplitude(double e) const {
    if (!explicit_profile()) {
        const double x = e - e0;
        const double norm = std::pow(delta_e * delta_e * M_PI, -0.25);
        return scale * norm * std::exp(cplx(-x * x / (2.0 * delta_e * delta_e), x * t0));
    }
    const auto& es = table_energy;
    if (e < es.front() || e > es.back()) return 0.0;
    const auto it = std::upper_bound(es.begin(), es.end(), e);
    if (it == es.end()) return scale * table_amplitude.back();
    const std::size_t j = static_cast<std::size_t>(it - es.begin());
    const double w = (e - es[j - 1]) / (es[j] - es[j - 1]);
    return scale * ((1.0 - w) * table_amplitude[j - 1] + w * table_amplitude[j]);
}

double ContinuumPacket::norm() const {
    if (!explicit_profile()) return scale * scale;
    double s = 0.0;
    for (std::size_t i = 1; i < table_energy.size(); ++i)
        s += 0.5 * (table_energy[i] - table_energy[i - 1]) *
             (std::norm(table_amplitude[i]) + std::norm(table_amplitude[i - 1]));
    return scale * scale * s;
}

cplx source_function(const ContinuumPacket& p, double t, double e_ref) {
    if (!p.explicit_profile()) {
        if (!(p.delta_e > 0.0)) throw DomainError("packet energy width must be positive");
        const double d = p.delta_e;
        const double x = d * (t - p.t0);
        const double mag = std::pow(d * d * M_PI, -0.25) * std::sqrt(2.0 * M_PI) * d * std::exp(-0.5 * x * x);
        return p.scale * mag * std::exp(cplx(0.0, (e_ref - p.e0) * t));
    }
    const auto& e = p.table_energy;
    const auto& b = p.table_amplitude;
    if (e.size() != b.size() || e.size() < 3) throw DimensionError("packet table needs matching columns, >= 3 rows");
    auto term = [&](std::size_t i) { return b[i] * std::exp(cplx(0.0, (e_ref - e[i]) * t)); };
    auto trapezoid = [&](std::size_t stride) {
        cplx s = 0.0;
        std::size_t prev = 0;
        for (std::size_t i = stride; i < e.size(); i += stride) {
            s += 0.5 * (e[i] - e[prev]) * (term(i) + term(prev));
            prev = i;
        }
        return std::pair{s, prev};
    };
    const auto [fine, last] = trapezoid(1);
    const auto [coarse, last2] = trapezoid(2);
    double mass = 0.0;
    for (std::size_t i = 1; i < e.size(); ++i) mass += 0.5 * (e[i] - e[i - 1]) * (std::abs(b[i]) + std::abs(b[i - 1]));
    // Compare over the common span only.
    cplx tail = 0.0;
    for (std::size_t i = last2 + 1; i <= last; ++i) tail += 0.5 * (e[i] - e[i - 1]) * (term(i) + term(i - 1));
    if (std::abs(fine - (coarse + tail)) > 1e-3 * mass)
        throw ConvergenceError("packet table too coarse for F0 at t = " + std::to_string(t));
    return p.scale * fine;
}

namespace {

// |mu(e_min + x)|^2, so the oscillatory weight is cos/sin(tau x).
struct Integrand {
    const std::function<double(double)>* mu;
    double e_min;
};

double mu_squared(double x, void* data) {
    const auto* d = static_cast<Integrand*>(data);
    const double m = (*d->mu)(d->e_min + x);
    return m * m;
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
    void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};

}  // namespace

cplx correlation_kernel(double e_min, double e_max, const std::function<double(double)>& coupling, double tau,
                        double e_ref) {
    if (!std::isfinite(e_min) || !std::isfinite(e_max) || e_max < e_min)
        throw DomainError("correlation band must be finite and ordered");
    const double width = e_max - e_min;
    if (width == 0.0) return 0.0;
    if (!coupling) {
        // integral of exp(i (e_ref - E) tau) over the band
        const double mid = 0.5 * (e_min + e_max);
        const double x = 0.5 * width * tau;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        return width * sinc * std::exp(cplx(0.0, (e_ref - mid) * tau));
    }

    gsl_set_error_handler_off();
    constexpr std::size_t kLimit = 2000;
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(kLimit));
    Integrand data{&coupling, e_min};
    gsl_function g{&mu_squared, &data};
    double re = 0.0, im = 0.0, err = 0.0;
    const double abs_tol = 0.0, rel_tol = 1e-10;
    int status = 0;
    if (tau == 0.0) {
        status = gsl_integration_qag(&g, 0.0, width, abs_tol, rel_tol, kLimit, GSL_INTEG_GAUSS41, ws.get(), &re, &err);
    } else {
        std::unique_ptr<gsl_integration_qawo_table, WorkspaceDeleter> tc(
            gsl_integration_qawo_table_alloc(tau, width, GSL_INTEG_COSINE, 50));
        double c = 0.0, s = 0.0;
        status = gsl_integration_qawo(&g, 0.0, abs_tol, rel_tol, kLimit, ws.get(), tc.get(), &c, &err);
        if (status == 0) {
            gsl_integration_qawo_table_set(tc.get(), tau, width, GSL_INTEG_SINE);
            status = gsl_integration_qawo(&g, 0.0, abs_tol, rel_tol, kLimit, ws.get(), tc.get(), &s, &err);
        }
        // exp(i (e_ref - e_min - x) tau) = exp(i (e_ref - e_min) tau) (cos - i sin)(tau x)
        const cplx v = std::exp(cplx(0.0, (e_ref - e_min) * tau)) * cplx(c, -s);
        re = v.real();
        im = v.imag();
    }
    if (status != 0)
        throw ConvergenceError(std::string("correlation kernel quadrature failed: ") + gsl_strerror(status));
    return {re, im};
}

double pi_pulse_intensity(const FcValue& fc, double duration, double dipole) {
    if (fc.kind != FcKind::bound_bound) throw DimensionError("pi pulse needs a bound-bound FC factor");
    if (fc.value == 0.0) throw DomainError("zero FC factor admits no pi pulse");
    if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
    const double field = M_PI / (std::abs(dipole * fc.value) * duration);
    return units::field_to_intensity(field);
}

}  // namespace pap
