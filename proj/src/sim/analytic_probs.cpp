#include "csb/analytic_probs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csb {

std::vector<std::pair<AltMask, double>> choice_set_distribution(const ChoiceSetLaw& law, int n) {
    if (n > 20) throw std::invalid_argument("choice_set_distribution: |D| > 20 unsupported");
    const AltMask full = full_mask(n);
    std::vector<std::pair<AltMask, double>> out;

    if (!law.alternative_specific) {
        std::vector<double> w = law.size_weights;
        if (w.empty()) w.assign(n - law.min_size + 1, 1.0);
        if (static_cast<int>(w.size()) != n - law.min_size + 1)
            throw std::invalid_argument("choice_set_distribution: size-law length mismatch");
        const double wtotal = std::accumulate(w.begin(), w.end(), 0.0);
        // per-size counts
        std::vector<double> binom(n + 1, 0.0);
        for (int q = law.min_size; q <= n; ++q) {
            double b = 1.0;
            for (int i = 0; i < q; ++i) b = b * (n - i) / (i + 1);
            binom[q] = b;
        }
        for (AltMask m = 1; m <= full; ++m) {
            const int q = mask_size(m);
            if (q < law.min_size) continue;
            out.emplace_back(m, w[q - law.min_size] / wtotal / binom[q]);
        }
        return out;
    }

    if (static_cast<int>(law.phi.size()) != n)
        throw std::invalid_argument("choice_set_distribution: phi length mismatch");
    double norm = 0.0;
    std::vector<double> raw;
    std::vector<AltMask> masks;
    for (AltMask m = 1; m <= full; ++m) {
        double p = 1.0;
        for (int c = 0; c < n; ++c)
            p *= mask_contains(m, c) ? law.phi[c] : 1.0 - law.phi[c];
        if (mask_size(m) >= law.min_size) {
            masks.push_back(m);
            raw.push_back(p);
            norm += p;
        }
    }
    if (norm <= 0.0)
        throw std::runtime_error("choice_set_distribution: ASR places no mass on sets of minimum size");
    for (std::size_t i = 0; i < masks.size(); ++i) out.emplace_back(masks[i], raw[i] / norm);
    return out;
}

std::vector<double> ur_asr_choice_probs(const ChoiceSetLaw& law, const RankPartition& partition,
                                        const BetaSpec& beta) {
    const int n = partition.cell().n_alternatives();
    const auto dist = choice_set_distribution(law, n);
    std::vector<double> probs(n, 0.0);
    for (int i = 0; i < partition.n_intervals(); ++i) {
        const double measure = beta.cdf(partition.upper(i)) - beta.cdf(partition.lower(i));
        if (measure <= 0.0) continue;
        const std::vector<int>& rank = partition.ranking(i);
        for (auto& [mask, pset] : dist) {
            // best element of the set under this interval's ordering
            for (int r : rank) {
                if (mask_contains(mask, r)) {
                    probs[r] += pset * measure;
                    break;
                }
            }
        }
    }
    return probs;
}

}  // namespace csb
