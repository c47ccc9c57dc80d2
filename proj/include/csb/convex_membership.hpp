#pragma once

#include <vector>

#include "csb/inequality.hpp"

namespace csb {

struct ConvexResult {
    double objective = 0.0;   // max over cells of the per-cell optimum
    bool in = false;          // objective <= 1e-9
    double grad_norm = 0.0;   // supergradient norm at the last iterate of the worst cell
    bool converged = true;    // step sizes exhausted without oscillation flag
};

// Membership check through the concave program
//   max_{||u|| <= 1} u'p(x) - sum_j P(D* = D^j) max_{d in D^j} u_d,
// solved by projected supergradient ascent (2000 iterations, step 1/sqrt(t)).
// Ties in the inner max break toward the lowest alternative index.
ConvexResult membership_convex(const ThetaPoint& theta, const CellFamily& family, int kappa,
                               const std::vector<std::vector<double>>& choice_probs,
                               int iterations = 2000);

}  // namespace csb
