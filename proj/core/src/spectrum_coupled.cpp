// Two-channel bound states: renormalized Numerov on the 2x2 potential
// matrix. The eigenvalue count below E is the number of negative
// eigenvalues accumulated by the ratio matrices R_i = F_{i+1} F_i^{-1}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "grid_setup.hpp"
#include "level_search.hpp"
#include "pap/errors.hpp"
#include "pap/parallel.hpp"
#include "pap/spectrum.hpp"

namespace pap::detail {
namespace {

using Mat = Eigen::Matrix2d;
using Vec = Eigen::Vector2d;

struct CoupledProblem {
    GridPtr grid;
    std::vector<double> a;    // 2 m g'^2
    std::vector<Mat> b;       // a V + schwarzian
    std::vector<double> low;  // lower adiabat, for turning points and the cut-off
    double h2_12 = 0.0;
    double mass = 1.0;
    double barrier = 35.0;

    std::size_t size() const { return a.size(); }
    Mat t(std::size_t i, double e) const { return h2_12 * (b[i] - a[i] * e * Mat::Identity()); }
};

double lower_adiabat(const std::array<double, 3>& v) {
    return 0.5 * (v[0] + v[1]) - std::hypot(0.5 * (v[0] - v[1]), v[2]);
}
double upper_adiabat(const std::array<double, 3>& v) {
    return 0.5 * (v[0] + v[1]) + std::hypot(0.5 * (v[0] - v[1]), v[2]);
}

CoupledProblem make_coupled(GridPtr grid, const CoupledPotential& p, double cent, double mass, double barrier) {
    CoupledProblem q;
    q.mass = mass;
    q.barrier = barrier;
    const auto r = grid->r();
    const auto jac = grid->jacobian();
    const auto schw = grid->schwarzian();
    const std::size_t n = r.size();
    q.a.resize(n);
    q.b.resize(n);
    q.low.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = p.matrix(r[i]);
        v[0] += cent / (r[i] * r[i]);
        v[1] += cent / (r[i] * r[i]);
        q.low[i] = lower_adiabat(v);
        q.a[i] = 2.0 * mass * jac[i] * jac[i];
        Mat m;
        m << v[0], v[2], v[2], v[1];
        q.b[i] = q.a[i] * m + schw[i] * Mat::Identity();
    }
    q.h2_12 = grid->hx() * grid->hx() / 12.0;
    q.grid = std::move(grid);
    return q;
}

Mat u_of(const Mat& t) { return (Mat::Identity() - t).inverse() * (2.0 * Mat::Identity() + 10.0 * t); }

// Inverse that tolerates an exactly singular ratio.
Mat safe_inverse(const Mat& m) {
    double det = m.determinant();
    if (std::abs(det) < 1e-300) {
        Mat n = m + 1e-150 * Mat::Identity();
        return n.inverse();
    }
    return m.inverse();
}

int negative_eigenvalues(const Mat& m) {
    // Symmetric 2x2: signs from determinant and trace.
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (det < 0.0) return 1;
    return m.trace() < 0.0 ? 2 : 0;
}

std::size_t outer_turning_index(const CoupledProblem& p, double e) {
    for (std::size_t i = p.size() - 1; i > 0; --i)
        if (p.low[i] <= e) return i;
    return 0;
}

double max_weight(const Mat& t) { return Eigen::SelfAdjointEigenSolver<Mat>(t, Eigen::EigenvaluesOnly).eigenvalues()(1); }

std::size_t effective_end(const CoupledProblem& p, double e) {
    const std::size_t last = p.size() - 1;
    const std::size_t m = outer_turning_index(p, e);
    if (m + 1 >= last) return last;
    const auto r = p.grid->r();
    double acc = 0.0;
    for (std::size_t i = m + 1; i < last; ++i) {
        acc += std::sqrt(std::max(0.0, 2.0 * p.mass * (p.low[i] - e))) * (r[i] - r[i - 1]);
        if (acc >= p.barrier || max_weight(p.t(i, e)) > 0.5) return std::max<std::size_t>(i, 4);
    }
    return last;
}

int count_nodes(const CoupledProblem& p, double e) {
    const std::size_t n = effective_end(p, e) + 1;
    Mat rr = u_of(p.t(1, e));
    int nodes = negative_eigenvalues(rr);
    for (std::size_t i = 2; i + 1 < n; ++i) {
        rr = u_of(p.t(i, e)) - safe_inverse(rr);
        nodes += negative_eigenvalues(rr);
    }
    return nodes;
}

struct TwoChannel {
    std::vector<double> psi[2];
};

TwoChannel coupled_wavefunction(const CoupledProblem& p, double e) {
    const std::size_t n = p.size();
    const std::size_t last = effective_end(p, e);
    std::size_t m = outer_turning_index(p, e);
    if (m == 0) m = last / 2;
    m = std::clamp<std::size_t>(m, 2, last - 2);

    // Outward ratios R_i = F_{i+1} F_i^{-1}, inward S_i = F_{i-1} F_i^{-1}.
    std::vector<Mat> out(n, Mat::Zero()), in(n, Mat::Zero());
    std::vector<Mat> u(n);
    for (std::size_t i = 1; i < last; ++i) u[i] = u_of(p.t(i, e));
    out[1] = u[1];
    for (std::size_t i = 2; i < m; ++i) out[i] = u[i] - safe_inverse(out[i - 1]);
    in[last - 1] = u[last - 1];
    for (std::size_t i = last - 2; i > m; --i) in[i] = u[i] - safe_inverse(in[i + 1]);

    // F_{m-1} = R_{m-1}^{-1} F_m and F_{m+1} = S_{m+1}^{-1} F_m; the
    // recurrence at m leaves D F_m = 0.
    const Mat d = u[m] - safe_inverse(out[m - 1]) - safe_inverse(in[m + 1]);
    const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.transpose()));
    const int k = std::abs(es.eigenvalues()(0)) <= std::abs(es.eigenvalues()(1)) ? 0 : 1;

    std::vector<Vec> f(n, Vec::Zero());
    f[m] = es.eigenvectors().col(k);
    for (std::size_t i = m; i >= 2; --i) f[i - 1] = safe_inverse(out[i - 1]) * f[i];
    for (std::size_t i = m; i + 1 < last; ++i) f[i + 1] = safe_inverse(in[i + 1]) * f[i];

    TwoChannel w;
    w.psi[0].assign(n, 0.0);
    w.psi[1].assign(n, 0.0);
    const auto jac = p.grid->jacobian();
    for (std::size_t i = 1; i < last; ++i) {
        const Vec phi = (Mat::Identity() - p.t(i, e)).inverse() * f[i];
        w.psi[0][i] = phi(0) * std::sqrt(jac[i]);
        w.psi[1][i] = phi(1) * std::sqrt(jac[i]);
    }
    const auto wt = p.grid->weights();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += wt[i] * (w.psi[0][i] * w.psi[0][i] + w.psi[1][i] * w.psi[1][i]);
    const double s = 1.0 / std::sqrt(norm);
    for (auto& ch : w.psi)
        for (double& x : ch) x *= s;
    return w;
}

}  // namespace
}  // namespace pap::detail

namespace pap {

std::vector<BoundState> bound_levels(const CoupledPotential& p, int J, EnergyWindow window, const SolverOptions& opt) {
    using detail::CoupledProblem;
    if (J < 0) throw DomainError("negative J");
    const double asym = p.asymptote();
    detail::check_window(window, asym);
    const double cent = J * (J + 1.0) / (2.0 * opt.mass);
    auto with_cent = [&p, cent](double r) {
        auto v = p.matrix(r);
        v[0] += cent / (r * r);
        v[1] += cent / (r * r);
        return v;
    };
    auto low = [&](double r) { return detail::lower_adiabat(with_cent(r)); };
    auto high = [&](double r) { return detail::upper_adiabat(with_cent(r)); };

    const auto plan = detail::plan_bound_grid(low, p.r_min(), window, opt, high);
    if (plan.empty) return {};
    detail::Ladder<CoupledProblem> ladder(
        plan.map, plan.base_intervals,
        [&p, cent, &opt](GridPtr g) { return detail::make_coupled(std::move(g), p, cent, opt.mass, opt.barrier); },
        opt.max_refinements);
    const auto& base = ladder.at(0);
    const int n_lo = count_nodes(base, window.e_min);
    const int n_hi = count_nodes(base, window.e_max);
    if (n_hi <= n_lo) return {};

    std::vector<BoundState> out(static_cast<std::size_t>(n_hi - n_lo));
    parallel_for(out.size(), [&](std::size_t idx) {
        const int v = n_lo + static_cast<int>(idx);
        const auto run = detail::converge_level(ladder, v, window, asym, opt, 0);
        const auto& prob = ladder.at(run.finest);
        auto w = detail::coupled_wavefunction(prob, run.raw.back());
        const auto wt = prob.grid->weights();
        BoundState s;
        s.v = v;
        s.J = J;
        s.energy = run.extrapolated;
        s.energy_by_level = run.raw;
        for (int c = 0; c < 2; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < wt.size(); ++i) acc += wt[i] * w.psi[c][i] * w.psi[c][i];
            s.channel_weights[c] = acc;
        }
        s.dominant_channel = s.channel_weights[1] > s.channel_weights[0] ? 1 : 0;
        // First significant lobe of the dominant channel positive.
        const auto& dom = w.psi[s.dominant_channel];
        const double peak = std::abs(*std::max_element(dom.begin(), dom.end(),
                                                       [](double x, double y) { return std::abs(x) < std::abs(y); }));
        for (double x : dom)
            if (std::abs(x) > 1e-3 * peak) {
                if (x < 0.0)
                    for (auto& ch : w.psi)
                        for (double& y : ch) y = -y;
                break;
            }
        s.psi.grid = prob.grid;
        s.psi.values = std::move(w.psi[0]);
        s.psi_other = std::move(w.psi[1]);
        s.outer_turning_point =
            detail::crossing_radius(prob.grid->r(), prob.low, detail::outer_turning_index(prob, s.energy), s.energy);
        const auto r = prob.grid->r();
        s.interpolant = std::make_shared<CubicSpline>(std::vector<double>(r.begin(), r.end()), s.psi.values);
        out[idx] = std::move(s);
    });
    std::erase_if(out, [&](const BoundState& s) { return s.energy > window.e_max || s.energy < window.e_min; });
    return out;
}

}  // namespace pap
