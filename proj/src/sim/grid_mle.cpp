#include "csb/grid_mle.hpp"

#include <cmath>
#include <stdexcept>

#include "csb/parallel.hpp"

namespace csb {

namespace {

struct CellData {
    CovariateCell cell;
    RankPartition partition;
    std::vector<long long> counts;
};

double loglik(const std::vector<CellData>& cells, const ChoiceSetLaw& law, const BetaSpec& beta) {
    double ll = 0.0;
    for (const auto& cd : cells) {
        const std::vector<double> p = ur_asr_choice_probs(law, cd.partition, beta);
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (cd.counts[c] == 0) continue;
            ll += static_cast<double>(cd.counts[c]) * std::log(std::max(p[c], 1e-300));
        }
    }
    return ll;
}

}  // namespace

MleResult grid_mle_ur_asr(const Dataset& data, const ChoiceSetLaw& law_in, double lo, double hi) {
    if (data.rows.size() < 1000)
        throw std::invalid_argument("grid_mle_ur_asr: needs at least 1e3 observations");
    const int n = data.feasible.size();
    const CellIndex index = build_cell_index(data);
    {
        // degenerate data: a single alternative chosen everywhere
        long long seen = 0;
        for (int c = 0; c < n; ++c) {
            long long tot = 0;
            for (int j = 0; j < index.n_cells(); ++j) tot += index.counts[j][c];
            if (tot > 0) ++seen;
        }
        if (seen <= 1) throw std::runtime_error("grid_mle_ur_asr: degenerate dataset (flat likelihood)");
    }

    std::vector<CellData> cells;
    cells.reserve(index.n_cells());
    for (int j = 0; j < index.n_cells(); ++j) {
        CovariateCell cell(data.feasible, index.mus[j], index.base_prices[j], index.menus[j]);
        RankPartition part(cell, lo, hi);
        cells.push_back(CellData{std::move(cell), std::move(part), index.counts[j]});
    }

    ChoiceSetLaw law = law_in;
    if (law.alternative_specific && static_cast<int>(law.phi.size()) != n)
        law.phi.assign(n, 0.5);

    const double w = hi - lo;
    auto eval = [&](double e, double v, const std::vector<double>& phi) {
        ChoiceSetLaw l = law;
        l.phi = phi;
        return loglik(cells, l, beta_from_moments(lo + w * e, w * w * v, lo, hi));
    };

    // coarse pass over the moment grid
    double best_e = 0.5, best_v = 0.04, best_ll = -std::numeric_limits<double>::infinity();
    std::vector<double> best_phi = law.phi;
    std::vector<std::pair<double, double>> nodes;
    for (double e = 0.03; e < 1.0; e += 0.03)
        for (double v = 0.005; v < e * (1.0 - e); v += 0.01) nodes.emplace_back(e, v);
    std::vector<double> lls(nodes.size());
    parallel_for(static_cast<std::int64_t>(nodes.size()), [&](std::int64_t i) {
        lls[i] = eval(nodes[i].first, nodes[i].second, best_phi);
    });
    double worst_ll = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        worst_ll = std::min(worst_ll, lls[i]);
        if (lls[i] > best_ll) {
            best_ll = lls[i];
            best_e = nodes[i].first;
            best_v = nodes[i].second;
        }
    }

    // coordinate passes over phi (ASR)
    if (law.alternative_specific) {
        for (int pass = 0; pass < 3; ++pass) {
            for (int c = 0; c < n; ++c) {
                double local_best = best_phi[c];
                for (double cand = 0.05; cand <= 0.951; cand += 0.05) {
                    std::vector<double> phi = best_phi;
                    phi[c] = cand;
                    const double ll = eval(best_e, best_v, phi);
                    if (ll > best_ll) {
                        best_ll = ll;
                        local_best = cand;
                    }
                }
                best_phi[c] = local_best;
            }
            // re-center gamma after each phi pass
            for (double e = std::max(0.02, best_e - 0.1); e <= std::min(0.98, best_e + 0.1); e += 0.02)
                for (double v = std::max(0.002, best_v - 0.02); v < e * (1.0 - e) && v <= best_v + 0.02;
                     v += 0.004) {
                    const double ll = eval(e, v, best_phi);
                    if (ll > best_ll) {
                        best_ll = ll;
                        best_e = e;
                        best_v = v;
                    }
                }
        }
        // finer phi pass
        for (int c = 0; c < n; ++c) {
            double local_best = best_phi[c];
            for (double cand = std::max(0.01, best_phi[c] - 0.06);
                 cand <= std::min(0.99, best_phi[c] + 0.06); cand += 0.01) {
                std::vector<double> phi = best_phi;
                phi[c] = cand;
                const double ll = eval(best_e, best_v, phi);
                if (ll > best_ll) {
                    best_ll = ll;
                    local_best = cand;
                }
            }
            best_phi[c] = local_best;
        }
    }

    // one local refinement pass on gamma
    const double estep = 0.03 / 6.0, vstep = 0.01 / 6.0;
    for (double e = std::max(1e-3, best_e - 0.03); e <= std::min(0.999, best_e + 0.03); e += estep)
        for (double v = std::max(5e-4, best_v - 0.01); v < e * (1.0 - e) && v <= best_v + 0.01;
             v += vstep) {
            const double ll = eval(e, v, best_phi);
            if (ll > best_ll) {
                best_ll = ll;
                best_e = e;
                best_v = v;
            }
        }

    MleResult res;
    res.gamma = beta_from_moments(lo + w * best_e, w * w * best_v, lo, hi);
    res.phi = law.alternative_specific ? best_phi : std::vector<double>{};
    res.loglik = best_ll;
    res.flat = std::abs(best_ll - worst_ll) < 1e-9;
    if (res.flat) throw std::runtime_error("grid_mle_ur_asr: flat likelihood");
    return res;
}

}  // namespace csb
