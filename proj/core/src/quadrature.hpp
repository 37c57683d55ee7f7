#pragma once

#include <vector>

namespace pap::detail {

struct Rule {
    std::vector<double> x, w;
};

// Gauss-Legendre on [a, b].
Rule gauss_legendre(int n, double a, double b);

}  // namespace pap::detail
