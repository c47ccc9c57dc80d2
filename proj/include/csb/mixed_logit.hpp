#pragma once

#include <string>
#include <vector>

#include "csb/beta_spec.hpp"
#include "csb/covariate_cell.hpp"
#include "csb/utility.hpp"

namespace csb {

// Additively separable extreme-value disturbance on top of the certainty
// equivalent, with a random CARA coefficient integrated by quadrature.
struct MixedLogitSpec {
    double scale = 1.0;           // disturbance scale sigma, certainty-equivalent dollars
    BetaSpec coefficient_prior;
    std::vector<double> nodes;    // nu values inside the support
    std::vector<double> weights;  // sum to 1 (normalized Beta-weighted rule)
    std::string rule = "gauss-legendre";

    MixedLogitSpec(double sigma, const BetaSpec& prior, std::size_t n_nodes = 64);
};

// sigma such that the disturbance's standard deviation equals `fraction` of
// the average adjacent-price gap of the cell's menu (Gumbel sd = pi/sqrt(6) sigma).
double scale_from_price_gap_fraction(const CovariateCell& cell, double fraction);

// Softmax of certainty equivalents over the subset G at temperature `scale`.
double logit_choice_prob(int target, AltMask G, const CovariateCell& cell, double nu, double scale);

// Probability the overall first best lies in K.
double top_union_prob(AltMask K, const CovariateCell& cell, double nu, double scale);

// P(every element of Dj beats every element of D \ Dj | nu), by
// inclusion-exclusion over nonempty subsets of Dj.
double realization_prob(AltMask Dj, const CovariateCell& cell, double nu, double scale);

// All size-m realization probabilities at one nu (m = |D| - q + 1), in
// lexicographic mask order; sums to 1.
std::vector<std::pair<AltMask, double>> realization_probs_all(int q, const CovariateCell& cell,
                                                              double nu, double scale);

// Quadrature over nu of sum_{Dj : Dj hits K} P(D*q = Dj | nu).
double containment_prob_mixed(AltMask K, int q, const CovariateCell& cell,
                              const MixedLogitSpec& spec);

}  // namespace csb
