#include "csb/rank_partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "csb/utility.hpp"

namespace csb {

namespace {

constexpr int kScanGrid = 1024;
constexpr double kRootTol = 1e-12;
constexpr double kBreakpointMergeTol = 1e-13;

double utility_gap(int a, int b, const CovariateCell& cell, double nu) {
    return expected_utility(a, cell, nu) - expected_utility(b, cell, nu);
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double bisect_root(int a, int b, const CovariateCell& cell, double lo, double hi) {
    double flo = utility_gap(a, b, cell, lo);
    for (int it = 0; it < 200 && hi - lo > kRootTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = utility_gap(a, b, cell, mid);
        if (sign_of(fmid) == sign_of(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ThresholdResult indifference_threshold(int alt_a, int alt_b, const CovariateCell& cell,
                                       double lo, double hi) {
    if (alt_a == alt_b) throw std::invalid_argument("indifference_threshold: identical alternatives");
    std::vector<double> nu(kScanGrid + 1), f(kScanGrid + 1);
    int zeros = 0;
    for (int i = 0; i <= kScanGrid; ++i) {
        nu[i] = lo + (hi - lo) * i / kScanGrid;
        f[i] = utility_gap(alt_a, alt_b, cell, nu[i]);
        if (f[i] == 0.0) ++zeros;
    }
    if (zeros > 2)
        throw std::runtime_error("indifference_threshold: near-tie cell (utility gap ~0 on an interval)");
    int changes = 0;
    double rlo = lo, rhi = hi;
    int prev = 0;
    double prev_nu = nu[0];
    for (int i = 0; i <= kScanGrid; ++i) {
        const int s = sign_of(f[i]);
        if (s == 0) continue;
        if (prev != 0 && s != prev) {
            ++changes;
            rlo = prev_nu;
            rhi = nu[i];
        }
        prev = s;
        prev_nu = nu[i];
    }
    if (changes > 1)
        throw std::runtime_error(
            "indifference_threshold: multiple sign changes (vertical differentiation violated)");
    if (changes == 0) {
        // constant-sign gap; classify by any nonzero sample
        for (double v : f)
            if (v != 0.0) return {v > 0.0 ? ThresholdKind::AlwaysA : ThresholdKind::AlwaysB, 0.0};
        throw std::runtime_error("indifference_threshold: utilities tie over the whole support");
    }
    return {ThresholdKind::Root, bisect_root(alt_a, alt_b, cell, rlo, rhi)};
}

std::optional<double> indifference_threshold_unbounded(int alt_a, int alt_b,
                                                       const CovariateCell& cell,
                                                       double lo, double hi) {
    // exp(nu*(p+c)) must stay in range on the probe bracket
    double worst = 0.0;
    for (int c = 0; c < cell.n_alternatives(); ++c)
        worst = std::max(worst, cell.price(c) + cell.feasible().amount(c));
    const double nu_cap = 650.0 / std::max(worst, 1.0);
    double blo = lo, bhi = hi;
    for (int round = 0; round < 64; ++round) {
        ThresholdResult r;
        try {
            r = indifference_threshold(alt_a, alt_b, cell, blo, bhi);
        } catch (const std::runtime_error&) {
            return std::nullopt;  // ties or multiple crossings: no clean threshold
        }
        if (r.kind == ThresholdKind::Root) return r.nu;
        const double width = bhi - blo;
        if (r.kind == ThresholdKind::AlwaysA) {
            // gap positive everywhere sampled; a crossing, if any, lies where the
            // gap can turn negative -- probe both directions
        }
        blo = std::max(-nu_cap, blo - width);
        bhi = std::min(nu_cap, bhi + width);
        if (blo == -nu_cap && bhi == nu_cap) {
            try {
                ThresholdResult rr = indifference_threshold(alt_a, alt_b, cell, blo, bhi);
                if (rr.kind == ThresholdKind::Root) return rr.nu;
            } catch (const std::runtime_error&) {
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

RankPartition::RankPartition(const CovariateCell& cell, double lo, double hi)
    : cell_(&cell), lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw std::invalid_argument("RankPartition: empty support");
    const int n = cell.n_alternatives();
    std::vector<double> cuts;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const ThresholdResult r = indifference_threshold(a, b, cell, lo, hi);
            if (r.kind == ThresholdKind::Root && r.nu > lo && r.nu < hi) cuts.push_back(r.nu);
        }
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts) {
        if (breakpoints_.empty() || c - breakpoints_.back() > kBreakpointMergeTol)
            breakpoints_.push_back(c);
    }

    const int n_int = static_cast<int>(breakpoints_.size()) + 1;
    rankings_.reserve(n_int);
    for (int i = 0; i < n_int; ++i) {
        const double a = i == 0 ? lo_ : breakpoints_[i - 1];
        const double b = i == n_int - 1 ? hi_ : breakpoints_[i];
        const double mid = 0.5 * (a + b);
        std::vector<double> u(n);
        for (int c = 0; c < n; ++c) u[c] = expected_utility(c, cell, mid);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return u[x] > u[y]; });
        for (int k = 0; k + 1 < n; ++k) {
            const double ua = u[order[k]], ub = u[order[k + 1]];
            if (std::abs(ua - ub) <= 1e-14 * std::max({1.0, std::abs(ua), std::abs(ub)}))
                throw std::runtime_error("RankPartition: utility tie at interval midpoint (degenerate cell)");
        }
        rankings_.push_back(std::move(order));
    }

    // collapse intervals whose rankings coincide (merged-threshold artifacts)
    std::vector<double> bp;
    std::vector<std::vector<int>> rk;
    rk.push_back(rankings_.front());
    for (int i = 1; i < n_int; ++i) {
        if (rankings_[i] == rk.back()) continue;
        bp.push_back(breakpoints_[i - 1]);
        rk.push_back(rankings_[i]);
    }
    breakpoints_ = std::move(bp);
    rankings_ = std::move(rk);
}

AltMask RankPartition::dstar(int interval, int q) const {
    const int n = cell_->n_alternatives();
    if (q < 2 || q > n) throw std::invalid_argument("dstar: q outside [2, |D|]");
    const int top = n - q + 1;
    AltMask m = 0;
    const std::vector<int>& r = rankings_.at(interval);
    for (int k = 0; k < top; ++k) m |= 1ULL << r[k];
    return m;
}

double containment_probability(const RankPartition& partition, int q, AltMask K,
                               const BetaSpec& beta) {
    if (K == 0) throw std::invalid_argument("containment_probability: empty test set");
    double total = 0.0;
    for (int i = 0; i < partition.n_intervals(); ++i) {
        if (partition.dstar(i, q) & K)
            total += beta.cdf(partition.upper(i)) - beta.cdf(partition.lower(i));
    }
    return std::min(1.0, std::max(0.0, total));
}

std::vector<std::pair<AltMask, double>> realization_probabilities(const RankPartition& partition,
                                                                  int q, const BetaSpec& beta) {
    std::vector<std::pair<AltMask, double>> out;
    for (int i = 0; i < partition.n_intervals(); ++i) {
        const AltMask m = partition.dstar(i, q);
        const double p = beta.cdf(partition.upper(i)) - beta.cdf(partition.lower(i));
        bool found = false;
        for (auto& [mask, prob] : out)
            if (mask == m) {
                prob += p;
                found = true;
                break;
            }
        if (!found) out.emplace_back(m, p);
    }
    return out;
}

std::vector<AltMask> realization_masks(const RankPartition& partition, int q) {
    std::vector<AltMask> out;
    for (int i = 0; i < partition.n_intervals(); ++i) {
        const AltMask m = partition.dstar(i, q);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

}  // namespace csb
