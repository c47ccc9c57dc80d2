#pragma once

#include "csb/analytic_probs.hpp"
#include "csb/dataset.hpp"

namespace csb {

struct MleResult {
    BetaSpec gamma;
    std::vector<double> phi;  // ASR only
    double loglik = 0.0;
    bool flat = false;        // likelihood carries no information
};

// Grid maximum likelihood for the UR/ASR benchmark processes: coarse moment
// grid over gamma (plus coordinate passes over phi for ASR) with one local
// refinement pass around the incumbent.
MleResult grid_mle_ur_asr(const Dataset& data, const ChoiceSetLaw& law, double support_lo,
                          double support_hi);

}  // namespace csb
