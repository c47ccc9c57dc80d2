#pragma once

#include "csb/region.hpp"

namespace csb {

struct PiBound {
    int q = 0;
    double lower = 0.0;
    double upper = 1.0;
    bool feasible = true;  // false when no (gamma, pi) satisfies the system
};

// Sharp population bounds on pi_q for q > kappa, profiling out gamma over a
// moment grid with pi_l = 0 for l outside {q, kappa}. Lower bounds are 0 and
// the pi_kappa upper bound is 1 whenever kappa < |D|.
PiBound pi_bound_for_q(const CellFamily& family, int kappa, int q,
                       const std::vector<std::vector<double>>& choice_probs,
                       const GridSpec& gamma_grid, bool parallel = true);

std::vector<PiBound> pi_bounds(const CellFamily& family, int kappa,
                               const std::vector<std::vector<double>>& choice_probs,
                               const GridSpec& gamma_grid, bool parallel = true);

}  // namespace csb
