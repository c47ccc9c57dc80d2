#pragma once

#include <string>
#include <vector>

#include "csb/dataset.hpp"
#include "csb/hypercubes.hpp"
#include "csb/rank_partition.hpp"

namespace csb {

struct DominatedVerdict {
    bool dominated = false;  // never first best anywhere on the support
    AltMask witnesses = 0;   // the first-best alternatives that beat it
};

// Exact verdicts from the rank partition, one per alternative.
std::vector<DominatedVerdict> dominated_alternatives(const RankPartition& partition);

struct LodComparison {
    int cube_a = 0, cube_b = 0;
    AltMask set_a = 0, set_b = 0;
    double prob_a = 0.0, prob_b = 0.0;
    double se = 0.0;       // joint binomial standard error of the difference
    bool violation = false;
};

struct LodResult {
    long long comparisons_price = 0, violations_price = 0, beyond_3se_price = 0;
    long long comparisons_interval = 0, violations_interval = 0, beyond_3se_interval = 0;
    std::vector<LodComparison> price_violations;     // Pr reversals across (mu, pbar) ordered cubes
    std::vector<LodComparison> interval_violations;  // Pr reversals under optimality-interval inclusion
};

// Demand-monotonicity checks at cube-average covariates. The first family
// compares suffix sets of D across cube pairs ordered by (lower mu, higher
// pbar); the second compares adjacent-run sets of size 1-3 whose full-set
// optimality intervals strictly nest. Comparisons whose sets contain an
// alternative dominated at the relevant cube are skipped.
LodResult law_of_demand_check(const Dataset& data, const InstrumentCells& instruments,
                              double support_lo, double support_hi);

struct RationalizabilityResult {
    std::vector<char> kept;  // per observation
    long long n_kept = 0;
    double share = 0.0;
};

// A record is kept iff its choice is among the top |D|-kappa+1 alternatives
// on some rank-partition interval of its own cell (no Beta assumption).
RationalizabilityResult rationalizability_filter(const Dataset& data, double support_lo,
                                                 double support_hi, int kappa);

struct RankOrderResult {
    bool applicable = false;  // the dominance certificate held
    bool pass = false;        // Pr(a) + Pr(b) > Pr(c)
    double margin = 0.0;
};

// Conditional rank-order test for a triple (a, b, c): requires that on every
// sub-interval either a or b beats c.
RankOrderResult rank_order_test(const std::vector<double>& choice_probs, int a, int b, int c,
                                const RankPartition& partition);

struct DensityEnvelope {
    std::vector<double> nus;
    std::vector<double> lower, upper;
};

// Pointwise min/max of the prior densities over accepted parameter points; an
// outer region for the set of admissible densities.
DensityEnvelope density_envelope(const std::vector<BetaSpec>& accepted, double support_lo,
                                 double support_hi, int grid_points = 101);

struct DiagnosticsReport {
    // per alternative: share of observations whose cell dominates it, the
    // share choosing it, and the union of witnesses
    std::vector<double> dominated_cell_share;
    std::vector<double> chosen_share;
    std::vector<AltMask> dominated_witnesses;
    LodResult lod;
    double rationalizable_share = 0.0;
    long long n = 0;
    std::vector<std::string> notes;
};

DiagnosticsReport build_diagnostics_report(const Dataset& data, double support_lo,
                                           double support_hi, int kappa);

}  // namespace csb
