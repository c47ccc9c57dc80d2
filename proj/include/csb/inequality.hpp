#pragma once

#include <memory>
#include <vector>

#include "csb/test_sets.hpp"
#include "csb/theta.hpp"

namespace csb {

// Owns the feasible set, the covariate cells and their rank partitions so the
// internal references stay valid for the life of the bundle.
struct CellFamily {
    std::shared_ptr<const FeasibleSet> feasible;
    std::vector<CovariateCell> cells;
    std::vector<RankPartition> partitions;
    double support_lo = 0.0;
    double support_hi = 0.0;

    CellFamily() = default;
    CellFamily(const CellFamily&) = delete;
    CellFamily& operator=(const CellFamily&) = delete;
    CellFamily(CellFamily&&) = default;
    CellFamily& operator=(CellFamily&&) = default;
};

CellFamily make_cell_family(FeasibleSet feasible,
                            const std::vector<std::pair<double, double>>& mu_pbar,
                            const PricingRule& rule, double support_lo, double support_hi);
CellFamily make_cell_family(FeasibleSet feasible,
                            const std::vector<double>& mus,
                            const std::vector<std::vector<double>>& menus,
                            const std::vector<double>& base_prices,
                            double support_lo, double support_hi);

// Precomputed { nu : D*q hits K } interval unions per (cell, set); containment
// probabilities at any Beta prior are then sums of cdf differences.
class ContainmentTable {
  public:
    ContainmentTable() = default;
    ContainmentTable(const std::vector<RankPartition>& partitions,
                     const std::vector<AltMask>& sets, int q);

    double prob(int cell, int set, const BetaSpec& beta) const;
    int n_cells() const { return n_cells_; }
    int n_sets() const { return n_sets_; }

  private:
    int n_cells_ = 0, n_sets_ = 0;
    std::vector<std::vector<double>> bounds_;  // per (cell,set): a1,b1,a2,b2,...
};

// Population-level moment inequality system: rows are (test set, cell) with
// an empirical left-hand side supplied as per-cell choice probabilities.
struct InequalitySystem {
    const CellFamily* family = nullptr;
    TestSetCollection collection;
    std::vector<std::vector<double>> choice_probs;  // [cell][alternative]
    int kappa = 2;
    std::vector<ContainmentTable> tables;           // one per q in kappa..|D| (lazily, see build)

    double lhs(int cell, AltMask K) const;
};

InequalitySystem build_system(const CellFamily& family, TestSetCollection collection,
                              std::vector<std::vector<double>> choice_probs, int kappa);

// Precompute containment tables for extra q values (pi mixtures). The system
// is immutable afterwards and safe to share across threads.
void ensure_tables(InequalitySystem& system, const std::vector<int>& qs);

// RHS - LHS for one (theta, K, cell) row; >= 0 means satisfied.
double evaluate_inequality(const ThetaPoint& theta, AltMask K, int cell,
                           const InequalitySystem& system, bool with_pi);

// Footnote-5 variant: Pr(|C|=1) <= pi_bar_1 < 1 replaces the minimum-size-2
// assumption; RHS becomes pi_bar_1 + (1-pi_bar_1) P(D*2 hits K).
double kappa_one_variant(const ThetaPoint& theta, AltMask K, int cell,
                         const InequalitySystem& system, double pi_bar_1);

struct MembershipResult {
    bool in = false;
    double min_slack = 0.0;
};

MembershipResult membership_enumerate(const ThetaPoint& theta, const InequalitySystem& system,
                                      bool with_pi = false);

}  // namespace csb
