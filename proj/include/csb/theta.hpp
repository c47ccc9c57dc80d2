#pragma once

#include <cmath>
#include <map>
#include <stdexcept>

#include "csb/beta_spec.hpp"

namespace csb {

// Candidate parameter point: Beta prior for the risk-aversion coefficient
// plus an optional choice-set-size distribution pi over {kappa, ..., |D|}.
struct ThetaPoint {
    BetaSpec beta;
    std::map<int, double> pi;  // empty when the size assumption is not imposed

    ThetaPoint() = default;
    explicit ThetaPoint(BetaSpec b, std::map<int, double> pi_masses = {})
        : beta(std::move(b)), pi(std::move(pi_masses)) {
        if (!pi.empty()) {
            double total = 0.0;
            for (auto& [q, mass] : pi) {
                if (mass < 0.0 || mass > 1.0)
                    throw std::invalid_argument("ThetaPoint: pi mass outside [0,1]");
                total += mass;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("ThetaPoint: pi masses must sum to 1");
        }
    }

    bool has_pi() const { return !pi.empty(); }
};

}  // namespace csb
