#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csb/beta_spec.hpp"
#include "csb/covariate_cell.hpp"

namespace csb {

enum class ThresholdKind { Root, AlwaysA, AlwaysB };

struct ThresholdResult {
    ThresholdKind kind;
    double nu;  // valid when kind == Root
};

// Root of expected_utility(a) - expected_utility(b) on (lo, hi): sign-change
// scan on a 1024-point grid, then bisection to 1e-12 in nu. More than one
// sign change means the vertical-differentiation assumption fails and is an
// error. AlwaysA / AlwaysB when the difference never changes sign.
ThresholdResult indifference_threshold(int alt_a, int alt_b, const CovariateCell& cell,
                                       double support_lo, double support_hi);

// Same root search over an expanding bracket around the support; nullopt when
// the pair never crosses anywhere the utility can be evaluated.
std::optional<double> indifference_threshold_unbounded(int alt_a, int alt_b,
                                                       const CovariateCell& cell,
                                                       double support_lo, double support_hi);

// Breakpoints of nu with the full utility ranking on each sub-interval.
// D*q on a sub-interval is the top (|D| - q + 1) alternatives of its ranking.
class RankPartition {
  public:
    RankPartition(const CovariateCell& cell, double support_lo, double support_hi);

    const CovariateCell& cell() const { return *cell_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    int n_intervals() const { return static_cast<int>(rankings_.size()); }
    double lower(int i) const { return i == 0 ? lo_ : breakpoints_[i - 1]; }
    double upper(int i) const {
        return i == n_intervals() - 1 ? hi_ : breakpoints_[i];
    }
    // best alternative first
    const std::vector<int>& ranking(int i) const { return rankings_.at(i); }

    AltMask dstar(int interval, int q) const;
    int first_best(int interval) const { return rankings_.at(interval).front(); }

  private:
    const CovariateCell* cell_;
    double lo_, hi_;
    std::vector<double> breakpoints_;
    std::vector<std::vector<int>> rankings_;
};

// Beta measure of { nu : D*q(nu) intersects K }.
double containment_probability(const RankPartition& partition, int q, AltMask K,
                               const BetaSpec& beta);

// P(D*q = Dj) for every realization Dj with positive measure, in the order
// the realizations appear along the support.
std::vector<std::pair<AltMask, double>> realization_probabilities(const RankPartition& partition,
                                                                  int q, const BetaSpec& beta);

// Distinct D*q realizations along the support (no measure attached).
std::vector<AltMask> realization_masks(const RankPartition& partition, int q);

}  // namespace csb
