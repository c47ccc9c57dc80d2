#pragma once

#include <string>
#include <vector>

#include "csb/rank_partition.hpp"

namespace csb {

enum class TestSetTarget {
    GammaRegion,   // sharp region for the preference prior (minimum size kappa)
    PiUpper,       // sharp bounds on pi_q for one q > kappa
    KappaOne,      // the Pr(|C|=1) <= pi_bar_1 variant (checked at q = 2)
    MixedLogit,    // full initialization; no elimination applies
};

struct TestSetCollection {
    std::vector<AltMask> sets;
    std::vector<std::string> provenance;  // which rule retained each set
    TestSetTarget target = TestSetTarget::GammaRegion;
    int q = 0;  // the projected size for PiUpper
};

// True when every cell is vertically differentiated in the strong sense:
// unique pairwise crossings exist on the whole real line and adjacent-pair
// thresholds strictly interlace, so that every alternative is first best
// somewhere and every D*q realization is a run of adjacent alternatives.
bool vertical_structure_holds(const std::vector<RankPartition>& partitions);

// The 2(kappa-1) prefix/suffix collection: {c1}, {c1,c2}, ..., and
// {c_n}, {c_n, c_{n-1}}, ... up to size kappa-1.
TestSetCollection prefix_suffix_collection(int n_alternatives, int kappa);

// Sufficient test-set collection for the requested target. Elimination
// conditions are checked exactly on the rank partitions and quantified over
// every cell, so a set is kept whenever any cell still needs it.
TestSetCollection generate_test_sets(const std::vector<RankPartition>& partitions, int kappa,
                                     TestSetTarget target, int q = 0);

}  // namespace csb
