#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csb/moments.hpp"
#include "csb/parallel.hpp"
#include "csb/rng.hpp"

namespace csb {

double gms_tau(long long n) { return std::sqrt(0.3 * std::log(static_cast<double>(n))); }

double gms_beta(long long n) {
    const double ln = std::log(static_cast<double>(n));
    return std::sqrt(0.4 * ln / std::log(ln));
}

MomentMachine::BootstrapCounts MomentMachine::make_bootstrap(int B, std::uint64_t seed,
                                                             bool parallel) const {
    if (B < 100) throw std::invalid_argument("make_bootstrap: B must be at least 100");
    const int nc = cells_.n_cells();
    const int n_sets = static_cast<int>(collection_.sets.size());
    const int n_alts = static_cast<int>(cells_.counts.front().size());

    // categorical over (cell, alternative) with empirical frequencies
    std::vector<std::pair<int, int>> cats;
    std::vector<double> weights;
    for (int j = 0; j < nc; ++j)
        for (int a = 0; a < n_alts; ++a)
            if (cells_.counts[j][a] > 0) {
                cats.emplace_back(j, a);
                weights.push_back(static_cast<double>(cells_.counts[j][a]));
            }
    // cumulative for binary search (alias table not worth it at these sizes)
    std::vector<double> cum(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        cum[i] = total;
    }

    BootstrapCounts out;
    out.B = B;
    out.in_set.assign(B, {});
    out.totals.assign(B, {});
    parallel_for(B, [&](std::int64_t b) {
        CounterRng rng(seed, 0xb00757ull + static_cast<std::uint64_t>(b));
        std::vector<std::int64_t> alt_counts(static_cast<std::size_t>(nc) * n_alts, 0);
        for (long long i = 0; i < n_; ++i) {
            const double u = rng.uniform() * total;
            const std::size_t k =
                std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
            const auto& [cell, alt] = cats[std::min(k, cats.size() - 1)];
            ++alt_counts[static_cast<std::size_t>(cell) * n_alts + alt];
        }
        std::vector<std::int64_t> in_set(static_cast<std::size_t>(nc) * n_sets, 0);
        std::vector<std::int64_t> totals(nc, 0);
        for (int j = 0; j < nc; ++j) {
            std::int64_t tot = 0;
            for (int a = 0; a < n_alts; ++a) tot += alt_counts[static_cast<std::size_t>(j) * n_alts + a];
            totals[j] = tot;
            for (int s = 0; s < n_sets; ++s) {
                std::int64_t c = 0;
                for (int a = 0; a < n_alts; ++a)
                    if (mask_contains(collection_.sets[s], a))
                        c += alt_counts[static_cast<std::size_t>(j) * n_alts + a];
                in_set[static_cast<std::size_t>(j) * n_sets + s] = c;
            }
        }
        out.in_set[b] = std::move(in_set);
        out.totals[b] = std::move(totals);
    }, parallel);
    return out;
}

MomentMachine::CriticalValues MomentMachine::bootstrap_critical(
    const std::vector<double>& P, const MomentTable& table, const BootstrapCounts& boot,
    double alpha, double xi) const {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("bootstrap_critical: alpha outside (0,0.5)");
    const int n_sets = static_cast<int>(collection_.sets.size());
    const double dn = static_cast<double>(n_);
    const double sqrtn = std::sqrt(dn);
    const double tau = gms_tau(n_);
    const double beta_n = gms_beta(n_);

    // GMS selection from the original studentized moments
    std::vector<double> shift(table.rows.size());
    std::vector<char> selected(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const MomentRow& row = table.rows[r];
        const double xi_r = sqrtn * row.mbar / row.sigma / tau;
        const bool keep = xi_r >= -1.0 && !row.sigma_floored;
        selected[r] = keep ? 1 : 0;
        shift[r] = keep ? 0.0 : -beta_n;
        if (row.sigma_floored) shift[r] = -std::numeric_limits<double>::infinity();
    }

    std::vector<double> as_stats(boot.B), hard_stats(boot.B);
    for (int b = 0; b < boot.B; ++b) {
        double as_max = 0.0;
        double hard_max = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const MomentRow& row = table.rows[r];
            const int cube = row.cube, s = row.set;
            double sum = 0.0, sumsq = 0.0;
            for (int cell : cells_in_cube_[cube]) {
                const double p = P[static_cast<std::size_t>(cell) * n_sets + s];
                const double nin = static_cast<double>(boot.in_set[b][static_cast<std::size_t>(cell) * n_sets + s]);
                const double ntot = static_cast<double>(boot.totals[b][cell]);
                sum += nin - p * ntot;
                sumsq += nin * (1.0 - p) * (1.0 - p) + (ntot - nin) * p * p;
            }
            const double mstar = sum / dn;
            double sstar = std::sqrt(std::max(sumsq / dn - mstar * mstar, 0.0));
            if (sstar < 1e-10) sstar = 1e-10;
            const double z = sqrtn * (mstar - table.rows[r].mbar) / sstar;
            if (shift[r] > -std::numeric_limits<double>::infinity()) {
                const double v = std::max(z + shift[r], 0.0);
                if (v * v > as_max) as_max = v * v;
            }
            if (selected[r] && z > hard_max) hard_max = z;
        }
        as_stats[b] = as_max;
        hard_stats[b] = std::isfinite(hard_max) ? hard_max : 0.0;
    }

    auto quantile = [](std::vector<double> v, double p) {
        std::sort(v.begin(), v.end());
        const std::size_t idx = std::min(
            v.size() - 1,
            static_cast<std::size_t>(std::max(0.0, std::ceil(p * static_cast<double>(v.size())) - 1.0)));
        return v[idx];
    };
    CriticalValues out;
    out.as_critical = quantile(as_stats, 1.0 - alpha + xi);
    out.hard_critical = quantile(hard_stats, 1.0 - alpha);
    return out;
}

}  // namespace csb
