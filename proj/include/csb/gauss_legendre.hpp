#pragma once

#include <cstddef>
#include <vector>

namespace csb {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule, Newton iteration on Legendre polynomials.
QuadratureRule gauss_legendre(std::size_t n);

}  // namespace csb
