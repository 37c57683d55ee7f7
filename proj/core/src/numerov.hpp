#pragma once

// Numerov kernels on a mapped grid. The equation is solved for
// phi(x) = psi(r) / sqrt(g'(x)), which obeys phi'' = q(x, E) phi with
// q = g'^2 2m (V_eff - E) + schwarzian.

#include <functional>
#include <vector>

#include "pap/radial_grid.hpp"

namespace pap::detail {

struct Problem1D {
    GridPtr grid;
    std::vector<double> a, b;  // q_i(E) = b_i - a_i E
    std::vector<double> veff;
    double h2_12 = 0.0;
    double mass = 1.0;
    double barrier = 35.0;

    std::size_t size() const { return a.size(); }
    double t(std::size_t i, double e) const { return h2_12 * (b[i] - a[i] * e); }
};

Problem1D make_problem(GridPtr grid, const std::function<double(double)>& veff, double mass,
                       double barrier = 35.0);

// Last node kept for energy e: the WKB exponent past the outer turning
// point reaches the barrier there (psi is set to zero), or the Numerov
// weight becomes too large to resolve the decay.
std::size_t effective_end(const Problem1D& p, double e);

// Number of eigenvalues of the discretised problem below e
// (psi = 0 at node 0 and at effective_end).
int count_nodes(const Problem1D& p, double e);

// Unit-normalised bound wavefunction psi(r_i) at a converged eigenvalue.
// Sign: first significant lobe positive.
std::vector<double> bound_wavefunction(const Problem1D& p, double e);

// Regular solution from psi(r_0) = 0, unnormalised psi(r_i).
std::vector<double> outward_solution(const Problem1D& p, double e);

// Index of the outermost node where q(e) <= 0.
std::size_t outer_turning_index(const Problem1D& p, double e);

}  // namespace pap::detail
