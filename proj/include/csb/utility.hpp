#pragma once

#include "csb/covariate_cell.hpp"

namespace csb {

// CARA Bernoulli utility u(y) = (1 - exp(-nu*y))/nu, u(y) = y at nu = 0.
// Below |nu*y| = 1e-8 a 3-term expansion avoids catastrophic cancellation.
// exp overflow surfaces as std::domain_error.
double cara_utility(double nu, double y);

// Expected utility of deductible alt under claim probability mu:
// (1-mu) u(-p_c) + mu u(-p_c - c).
double expected_utility(int alt, const CovariateCell& cell, double nu);

// Certainty-equivalent payment minus expected loss for a binary lottery
// losing `loss` with probability `prob`: ln((1-prob) + prob e^{nu loss})/nu - prob*loss.
double risk_premium(double nu, double loss, double prob);

// Sure payoff with the same utility as expected_utility(alt): inverts CARA.
double certainty_equivalent(int alt, const CovariateCell& cell, double nu);

}  // namespace csb
