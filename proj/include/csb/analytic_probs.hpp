#pragma once

#include <vector>

#include "csb/rank_partition.hpp"

namespace csb {

// Choice-set formation benchmarks with analytic choice probabilities.
struct ChoiceSetLaw {
    bool alternative_specific = false;   // false: uniform random (UR), true: ASR
    int min_size = 2;
    std::vector<double> size_weights;    // UR: over sizes min_size..|D|; uniform when empty
    std::vector<double> phi;             // ASR inclusion probabilities
};

// Pr(C = G) for every subset G with |G| >= min_size, indexed by mask.
std::vector<std::pair<AltMask, double>> choice_set_distribution(const ChoiceSetLaw& law,
                                                                int n_alternatives);

// Analytic per-alternative choice probabilities: mixture of argmax indicators
// over the choice-set law and the preference prior.
std::vector<double> ur_asr_choice_probs(const ChoiceSetLaw& law, const RankPartition& partition,
                                        const BetaSpec& beta);

}  // namespace csb
