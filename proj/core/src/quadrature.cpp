#include "quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>

#include "pap/errors.hpp"

namespace pap::detail {

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature needs at least one node");
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
        gsl_integration_fixed_alloc(gsl_integration_fixed_legendre, static_cast<std::size_t>(n), a, b, 0.0, 0.0),
        &gsl_integration_fixed_free);
    if (!ws) throw ConvergenceError("Legendre rule with " + std::to_string(n) + " nodes unavailable");
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    return {std::vector<double>(x, x + n), std::vector<double>(w, w + n)};
}

}  // namespace pap::detail
