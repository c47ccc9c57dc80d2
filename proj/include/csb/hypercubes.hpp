#pragma once

#include <array>
#include <utility>
#include <vector>

namespace csb {

// Axis-aligned instrument boxes in standardized (mu, pbar) coordinates that
// turn the conditional inequalities into finitely many unconditional ones.
// The last cube always contains every observation.
struct InstrumentCells {
    std::array<std::array<double, 2>, 2> transform{};  // upper-triangular, cov -> identity
    struct Cube {
        double lo0, hi0, lo1, hi1;  // transformed coordinates, +-inf on outer edges
    };
    std::vector<Cube> cubes;      // quantile boxes then the all-data cube
    std::vector<int> cube_of_obs;  // index of the (unique) quantile box per observation
    int J = 0;                     // number of cubes including the all-data cube

    int quantile_cube_of(double mu, double pbar) const;
};

// Standardizes by the upper-triangular factor of the sample covariance and
// cuts each axis at its empirical octiles (axis_quantile_count bins per axis),
// adding the all-data cube. A constant covariate collapses its axis to one
// bin; exactly collinear covariates are an error.
InstrumentCells build_hypercubes(const std::vector<std::pair<double, double>>& mu_pbar,
                                 int axis_quantile_count = 8);

}  // namespace csb
