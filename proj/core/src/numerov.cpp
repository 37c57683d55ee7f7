#include "numerov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pap/errors.hpp"

namespace pap::detail {

Problem1D make_problem(GridPtr grid, const std::function<double(double)>& veff, double mass, double barrier) {
    Problem1D p;
    p.mass = mass;
    p.barrier = barrier;
    const auto r = grid->r();
    const auto jac = grid->jacobian();
    const auto schw = grid->schwarzian();
    const std::size_t n = r.size();
    p.a.resize(n);
    p.b.resize(n);
    p.veff.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // psi(r_0) = 0 is imposed, so a singular V_eff at r = 0 never enters.
        const double v = (r[i] > 0.0) ? veff(r[i]) : 0.0;
        p.veff[i] = v;
        p.a[i] = 2.0 * mass * jac[i] * jac[i];
        p.b[i] = p.a[i] * v + schw[i];
    }
    p.h2_12 = grid->hx() * grid->hx() / 12.0;
    p.grid = std::move(grid);
    return p;
}

namespace {
inline double u_of(double t) { return (2.0 + 10.0 * t) / (1.0 - t); }
constexpr double kTiny = 1e-300;
}  // namespace

std::size_t effective_end(const Problem1D& p, double e) {
    const std::size_t last = p.size() - 1;
    const std::size_t m = outer_turning_index(p, e);
    if (m + 1 >= last) return last;
    const auto r = p.grid->r();
    double acc = 0.0;
    for (std::size_t i = m + 1; i < last; ++i) {
        acc += std::sqrt(std::max(0.0, 2.0 * p.mass * (p.veff[i] - e))) * (r[i] - r[i - 1]);
        if (acc >= p.barrier || p.t(i, e) > 0.5) return std::max<std::size_t>(i, 4);
    }
    return last;
}

int count_nodes(const Problem1D& p, double e) {
    const std::size_t n = effective_end(p, e) + 1;
    int nodes = 0;
    double rr = u_of(p.t(1, e));
    if (rr < 0.0) ++nodes;
    for (std::size_t i = 2; i + 1 < n; ++i) {
        if (rr == 0.0) rr = kTiny;
        rr = u_of(p.t(i, e)) - 1.0 / rr;
        if (rr < 0.0) ++nodes;
    }
    return nodes;
}

std::size_t outer_turning_index(const Problem1D& p, double e) {
    for (std::size_t i = p.size() - 1; i > 0; --i)
        if (p.veff[i] <= e) return i;
    return 0;
}

std::vector<double> bound_wavefunction(const Problem1D& p, double e) {
    const std::size_t n = p.size();
    const std::size_t last = effective_end(p, e);
    std::size_t m = outer_turning_index(p, e);
    if (m == 0) m = last / 2;
    m = std::clamp<std::size_t>(m, 2, last - 2);

    std::vector<double> f(n, 0.0);
    std::vector<double> ratio(n, 0.0);

    // Outward ratios R_i = F_{i+1}/F_i, i = 1..m.
    ratio[1] = u_of(p.t(1, e));
    for (std::size_t i = 2; i <= m; ++i) {
        const double prev = ratio[i - 1] == 0.0 ? kTiny : ratio[i - 1];
        ratio[i] = u_of(p.t(i, e)) - 1.0 / prev;
    }
    f[m] = 1.0;
    for (std::size_t i = m - 1; i >= 1; --i) {
        f[i] = f[i + 1] / (ratio[i] == 0.0 ? kTiny : ratio[i]);
        if (!std::isfinite(f[i])) f[i] = 0.0;
    }

    // Inward ratios S_i = F_i/F_{i+1}, i = last-2 .. m.
    std::vector<double> s(n, 0.0);
    s[last - 2] = u_of(p.t(last - 1, e));
    for (std::size_t i = last - 2; i > m; --i) {
        const double prev = s[i] == 0.0 ? kTiny : s[i];
        s[i - 1] = u_of(p.t(i, e)) - 1.0 / prev;
    }
    f[m + 1] = f[m] / (s[m] == 0.0 ? kTiny : s[m]);
    for (std::size_t i = m + 1; i + 1 < last; ++i) {
        f[i + 1] = f[i] / (s[i] == 0.0 ? kTiny : s[i]);
        if (!std::isfinite(f[i + 1])) f[i + 1] = 0.0;
    }
    f[last] = 0.0;

    const auto jac = p.grid->jacobian();
    const auto w = p.grid->weights();
    std::vector<double> psi(n, 0.0);
    double norm = 0.0, peak = 0.0;
    for (std::size_t i = 1; i < last; ++i) {
        psi[i] = f[i] / (1.0 - p.t(i, e)) * std::sqrt(jac[i]);
        norm += w[i] * psi[i] * psi[i];
        peak = std::max(peak, std::abs(psi[i]));
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ConvergenceError("bound wavefunction could not be normalised");
    double sign = 1.0;
    for (std::size_t i = 1; i < last; ++i)
        if (std::abs(psi[i]) > 1e-3 * peak) {
            sign = psi[i] > 0.0 ? 1.0 : -1.0;
            break;
        }
    const double scale = sign / std::sqrt(norm);
    for (auto& v : psi) v *= scale;
    return psi;
}

std::vector<double> outward_solution(const Problem1D& p, double e) {
    const std::size_t n = p.size();
    std::vector<double> f(n, 0.0);
    f[1] = 1e-20;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        f[i + 1] = u_of(p.t(i, e)) * f[i] - (i >= 1 ? f[i - 1] : 0.0);
        if (std::abs(f[i + 1]) > 1e200) {
            for (std::size_t j = 0; j <= i + 1; ++j) f[j] *= 1e-200;
        }
    }
    const auto jac = p.grid->jacobian();
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = f[i] / (1.0 - p.t(i, e)) * std::sqrt(jac[i]);
    return psi;
}

}  // namespace pap::detail
