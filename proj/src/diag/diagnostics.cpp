#include "csb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace csb {

std::vector<DominatedVerdict> dominated_alternatives(const RankPartition& partition) {
    const int n = partition.cell().n_alternatives();
    std::vector<DominatedVerdict> out(n);
    std::vector<char> first_best(n, 0);
    for (int i = 0; i < partition.n_intervals(); ++i) first_best[partition.first_best(i)] = 1;
    for (int c = 0; c < n; ++c) {
        if (first_best[c]) continue;
        out[c].dominated = true;
        for (int i = 0; i < partition.n_intervals(); ++i)
            out[c].witnesses |= 1ULL << partition.first_best(i);
    }
    return out;
}

namespace {

// union of the intervals where the full-set first best lies in K
std::vector<std::pair<double, double>> optimality_region(const RankPartition& part, AltMask K) {
    std::vector<std::pair<double, double>> out;
    bool open = false;
    double lo = 0.0;
    for (int i = 0; i < part.n_intervals(); ++i) {
        const bool hit = mask_contains(K, part.first_best(i));
        if (hit && !open) {
            open = true;
            lo = part.lower(i);
        } else if (!hit && open) {
            open = false;
            out.emplace_back(lo, part.lower(i));
        }
    }
    if (open) out.emplace_back(lo, part.support_hi());
    return out;
}

bool region_subset(const std::vector<std::pair<double, double>>& a,
                   const std::vector<std::pair<double, double>>& b, double tol = 1e-12) {
    for (auto& [alo, ahi] : a) {
        bool covered = false;
        for (auto& [blo, bhi] : b)
            if (blo <= alo + tol && ahi <= bhi + tol) covered = true;
        if (!covered) return false;
    }
    return true;
}

double region_length(const std::vector<std::pair<double, double>>& a) {
    double len = 0.0;
    for (auto& [lo, hi] : a) len += hi - lo;
    return len;
}

std::vector<AltMask> suffix_sets(int n) {
    std::vector<AltMask> out;
    AltMask m = 0;
    for (int k = n - 1; k > 0; --k) {
        m |= 1ULL << k;
        out.push_back(m);
    }
    return out;
}

std::vector<AltMask> adjacent_runs(int n, int max_len) {
    std::vector<AltMask> out;
    for (int len = 1; len <= max_len; ++len)
        for (int start = 0; start + len <= n; ++start)
            out.push_back(full_mask(len) << start);
    return out;
}

}  // namespace

LodResult law_of_demand_check(const Dataset& data, const InstrumentCells& instruments,
                              double lo, double hi) {
    const int n = data.feasible.size();

    // cube-average covariates and per-cube choice frequencies
    const int J = instruments.J;
    const int quantile_cubes = J - 1;  // excludes the all-data cube
    std::vector<double> mu_sum(quantile_cubes, 0.0), pbar_sum(quantile_cubes, 0.0);
    std::vector<long long> count(quantile_cubes, 0);
    std::vector<std::vector<long long>> choice_count(quantile_cubes, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const int cube = instruments.cube_of_obs[i];
        if (cube < 0 || cube >= quantile_cubes) continue;
        mu_sum[cube] += data.rows[i].mu;
        pbar_sum[cube] += static_cast<double>(data.rows[i].base_price_cents) / 100.0;
        ++count[cube];
        ++choice_count[cube][data.rows[i].choice];
    }

    struct CubeInfo {
        int cube;
        double mu, pbar;
        long long n_obs;
        std::vector<double> freq;
        RankPartition part;
        std::vector<DominatedVerdict> dominated;
    };
    std::vector<CubeInfo> cubes;
    for (int j = 0; j < quantile_cubes; ++j) {
        if (count[j] == 0) continue;
        const double mu = mu_sum[j] / static_cast<double>(count[j]);
        const double pbar = pbar_sum[j] / static_cast<double>(count[j]);
        std::vector<double> menu(n);
        if (data.rule) {
            for (int c = 0; c < n; ++c) menu[c] = data.rule->price(c, pbar);
        } else {
            // average observed menu over the cube
            std::vector<double> acc(n, 0.0);
            for (std::size_t i = 0; i < data.rows.size(); ++i) {
                if (instruments.cube_of_obs[i] != j) continue;
                for (int c = 0; c < n; ++c) acc[c] += data.price(data.rows[i], c);
            }
            for (int c = 0; c < n; ++c) menu[c] = acc[c] / static_cast<double>(count[j]);
        }
        CovariateCell cell(data.feasible, mu, pbar, menu);
        RankPartition part(cell, lo, hi);
        std::vector<double> freq(n);
        for (int c = 0; c < n; ++c)
            freq[c] = static_cast<double>(choice_count[j][c]) / static_cast<double>(count[j]);
        auto dom = dominated_alternatives(part);
        cubes.push_back(CubeInfo{j, mu, pbar, count[j], std::move(freq), std::move(part), std::move(dom)});
    }

    LodResult res;
    auto set_prob = [&](const CubeInfo& ci, AltMask K) {
        double p = 0.0;
        for (int c = 0; c < n; ++c)
            if (mask_contains(K, c)) p += ci.freq[c];
        return p;
    };
    auto contains_dominated = [&](const CubeInfo& ci, AltMask K) {
        for (int c = 0; c < n; ++c)
            if (mask_contains(K, c) && ci.dominated[c].dominated) return true;
        return false;
    };
    auto diff_se = [&](const CubeInfo& a, const CubeInfo& b, double pa, double pb) {
        return std::sqrt(pa * (1.0 - pa) / static_cast<double>(a.n_obs) +
                         pb * (1.0 - pb) / static_cast<double>(b.n_obs));
    };

    // demand for high deductibles rises with price and falls with claim risk
    const std::vector<AltMask> suffixes = suffix_sets(n);
    for (const CubeInfo& a : cubes)
        for (const CubeInfo& b : cubes) {
            if (!(a.mu < b.mu && a.pbar > b.pbar)) continue;  // strict ordering, ties skipped
            for (AltMask K : suffixes) {
                if (contains_dominated(a, K) || contains_dominated(b, K)) continue;
                const double pa = set_prob(a, K), pb = set_prob(b, K);
                ++res.comparisons_price;
                if (pa <= pb) {
                    ++res.violations_price;
                    LodComparison cmp{a.cube, b.cube, K, K, pa, pb, diff_se(a, b, pa, pb), true};
                    if (pb - pa > 3.0 * cmp.se) ++res.beyond_3se_price;
                    res.price_violations.push_back(cmp);
                }
            }
        }

    // optimality-interval inclusion across cubes
    const std::vector<AltMask> runs = adjacent_runs(n, 3);
    struct Region {
        AltMask K;
        std::vector<std::pair<double, double>> region;
    };
    std::vector<std::vector<Region>> regions(cubes.size());
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (AltMask K : runs) regions[i].push_back({K, optimality_region(cubes[i].part, K)});

    for (std::size_t ia = 0; ia < cubes.size(); ++ia)
        for (std::size_t ib = 0; ib < cubes.size(); ++ib) {
            if (ia == ib) continue;
            for (const Region& ra : regions[ia]) {
                if (region_length(ra.region) == 0.0) continue;
                if (contains_dominated(cubes[ia], ra.K)) continue;
                for (const Region& rb : regions[ib]) {
                    if (contains_dominated(cubes[ib], rb.K)) continue;
                    // strict inclusion of the optimality regions
                    if (!region_subset(ra.region, rb.region)) continue;
                    if (region_length(rb.region) - region_length(ra.region) <= 1e-12) continue;
                    const double pa = set_prob(cubes[ia], ra.K), pb = set_prob(cubes[ib], rb.K);
                    ++res.comparisons_interval;
                    if (pa > pb) {
                        ++res.violations_interval;
                        LodComparison cmp{cubes[ia].cube, cubes[ib].cube, ra.K, rb.K,
                                          pa, pb, diff_se(cubes[ia], cubes[ib], pa, pb), true};
                        if (pa - pb > 3.0 * cmp.se) ++res.beyond_3se_interval;
                        res.interval_violations.push_back(cmp);
                    }
                }
            }
        }
    return res;
}

RationalizabilityResult rationalizability_filter(const Dataset& data, double lo, double hi,
                                                 int kappa) {
    const CellIndex index = build_cell_index(data);
    std::vector<AltMask> rationalizable(index.n_cells(), 0);
    for (int j = 0; j < index.n_cells(); ++j) {
        CovariateCell cell(data.feasible, index.mus[j], index.base_prices[j], index.menus[j]);
        RankPartition part(cell, lo, hi);
        AltMask ok = 0;
        for (int i = 0; i < part.n_intervals(); ++i) ok |= part.dstar(i, kappa);
        rationalizable[j] = ok;
    }
    RationalizabilityResult res;
    res.kept.resize(data.rows.size());
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const bool keep = mask_contains(rationalizable[index.cell_of_row[i]], data.rows[i].choice);
        res.kept[i] = keep ? 1 : 0;
        if (keep) ++res.n_kept;
    }
    res.share = data.rows.empty()
                    ? 0.0
                    : static_cast<double>(res.n_kept) / static_cast<double>(data.rows.size());
    return res;
}

RankOrderResult rank_order_test(const std::vector<double>& probs, int a, int b, int c,
                                const RankPartition& partition) {
    RankOrderResult res;
    const int n = partition.cell().n_alternatives();
    if (a == b || b == c || a == c || a >= n || b >= n || c >= n)
        throw std::invalid_argument("rank_order_test: invalid triple");
    // certificate: on every sub-interval either a or b beats c
    for (int i = 0; i < partition.n_intervals(); ++i) {
        const std::vector<int>& rank = partition.ranking(i);
        int pos_a = 0, pos_b = 0, pos_c = 0;
        for (int k = 0; k < n; ++k) {
            if (rank[k] == a) pos_a = k;
            if (rank[k] == b) pos_b = k;
            if (rank[k] == c) pos_c = k;
        }
        if (!(pos_a < pos_c || pos_b < pos_c)) return res;  // certificate fails: inapplicable
    }
    res.applicable = true;
    res.margin = probs.at(a) + probs.at(b) - probs.at(c);
    res.pass = res.margin > 0.0;
    return res;
}

DensityEnvelope density_envelope(const std::vector<BetaSpec>& accepted, double lo, double hi,
                                 int grid_points) {
    if (accepted.empty()) throw std::invalid_argument("density_envelope: empty accepted set");
    DensityEnvelope env;
    env.nus.resize(grid_points);
    env.lower.assign(grid_points, std::numeric_limits<double>::infinity());
    env.upper.assign(grid_points, 0.0);
    for (int i = 0; i < grid_points; ++i)
        env.nus[i] = lo + (hi - lo) * i / (grid_points - 1);
    for (const BetaSpec& spec : accepted)
        for (int i = 0; i < grid_points; ++i) {
            const double d = spec.pdf(env.nus[i]);
            env.lower[i] = std::min(env.lower[i], d);
            env.upper[i] = std::max(env.upper[i], d);
        }
    return env;
}

DiagnosticsReport build_diagnostics_report(const Dataset& data, double lo, double hi, int kappa) {
    const int n = data.feasible.size();
    DiagnosticsReport rep;
    rep.n = static_cast<long long>(data.rows.size());
    rep.dominated_cell_share.assign(n, 0.0);
    rep.chosen_share.assign(n, 0.0);
    rep.dominated_witnesses.assign(n, 0);

    const CellIndex index = build_cell_index(data);
    std::vector<std::vector<DominatedVerdict>> verdicts(index.n_cells());
    for (int j = 0; j < index.n_cells(); ++j) {
        CovariateCell cell(data.feasible, index.mus[j], index.base_prices[j], index.menus[j]);
        RankPartition part(cell, lo, hi);
        verdicts[j] = dominated_alternatives(part);
    }
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const int j = index.cell_of_row[i];
        rep.chosen_share[data.rows[i].choice] += 1.0;
        for (int c = 0; c < n; ++c)
            if (verdicts[j][c].dominated) {
                rep.dominated_cell_share[c] += 1.0;
                rep.dominated_witnesses[c] |= verdicts[j][c].witnesses;
            }
    }
    for (int c = 0; c < n; ++c) {
        rep.chosen_share[c] /= static_cast<double>(rep.n);
        rep.dominated_cell_share[c] /= static_cast<double>(rep.n);
    }

    const InstrumentCells instruments = [&] {
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(data.rows.size());
        for (const auto& r : data.rows)
            pairs.emplace_back(r.mu, static_cast<double>(r.base_price_cents) / 100.0);
        return build_hypercubes(pairs);
    }();
    rep.lod = law_of_demand_check(data, instruments, lo, hi);
    rep.rationalizable_share = rationalizability_filter(data, lo, hi, kappa).share;
    return rep;
}

}  // namespace csb
