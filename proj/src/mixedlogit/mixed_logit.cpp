#include "csb/mixed_logit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "csb/gauss_legendre.hpp"

namespace csb {

MixedLogitSpec::MixedLogitSpec(double sigma, const BetaSpec& prior, std::size_t n_nodes)
    : scale(sigma), coefficient_prior(prior) {
    if (!(sigma > 0.0)) throw std::invalid_argument("MixedLogitSpec: scale must be positive");
    if (n_nodes < 8) throw std::invalid_argument("MixedLogitSpec: at least 8 quadrature nodes");
    const QuadratureRule rule_pts = gauss_legendre(n_nodes);
    const double lo = prior.support_lo, hi = prior.support_hi;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    nodes.resize(n_nodes);
    weights.resize(n_nodes);
    double total = 0.0;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes[i] = mid + half * rule_pts.nodes[i];
        weights[i] = rule_pts.weights[i] * half * prior.pdf(nodes[i]);
        total += weights[i];
    }
    // self-normalize so the weights are an exact probability vector
    for (double& w : weights) w /= total;
}

double scale_from_price_gap_fraction(const CovariateCell& cell, double fraction) {
    if (!(fraction > 0.0)) throw std::invalid_argument("scale_from_price_gap_fraction: fraction <= 0");
    double gap = 0.0;
    const int n = cell.n_alternatives();
    for (int c = 0; c + 1 < n; ++c) gap += std::abs(cell.price(c) - cell.price(c + 1));
    gap /= (n - 1);
    const double gumbel_sd = M_PI / std::sqrt(6.0);
    return fraction * gap / gumbel_sd;
}

namespace {

// exp((CE_c - shift)/scale) for every alternative, shift = max CE (LSE safety)
std::vector<double> scaled_weights(const CovariateCell& cell, double nu, double scale) {
    const int n = cell.n_alternatives();
    std::vector<double> ce(n);
    double top = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
        ce[c] = certainty_equivalent(c, cell, nu);
        if (ce[c] > top) top = ce[c];
    }
    std::vector<double> w(n);
    for (int c = 0; c < n; ++c) w[c] = std::exp((ce[c] - top) / scale);
    return w;
}

}  // namespace

double logit_choice_prob(int target, AltMask G, const CovariateCell& cell, double nu,
                         double scale) {
    if (G == 0) throw std::invalid_argument("logit_choice_prob: empty subset");
    if (!mask_contains(G, target)) throw std::invalid_argument("logit_choice_prob: target not in G");
    const std::vector<double> w = scaled_weights(cell, nu, scale);
    double denom = 0.0;
    for (int c = 0; c < cell.n_alternatives(); ++c)
        if (mask_contains(G, c)) denom += w[c];
    return w[target] / denom;
}

double top_union_prob(AltMask K, const CovariateCell& cell, double nu, double scale) {
    const std::vector<double> w = scaled_weights(cell, nu, scale);
    double num = 0.0, denom = 0.0;
    for (int c = 0; c < cell.n_alternatives(); ++c) {
        if (mask_contains(K, c)) num += w[c];
        denom += w[c];
    }
    return num / denom;
}

namespace {

double realization_prob_from_weights(AltMask Dj, const std::vector<double>& w, AltMask full) {
    const AltMask comp = full & ~Dj;
    double comp_sum = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c)
        if (mask_contains(comp, static_cast<int>(c))) comp_sum += w[c];

    // gather member weights of Dj
    std::vector<double> member;
    for (std::size_t c = 0; c < w.size(); ++c)
        if (mask_contains(Dj, static_cast<int>(c))) member.push_back(w[c]);
    const int m = static_cast<int>(member.size());
    if (m > 14) throw std::invalid_argument("realization_prob: |Dj| > 14 unsupported");

    // sum over nonempty T of Dj: sign * S_T/(S_T + comp_sum), S_T = sum of member weights in T
    double total = 0.0;
    const unsigned subsets = 1u << m;
    for (unsigned t = 1; t < subsets; ++t) {
        double s = 0.0;
        unsigned bits = t;
        while (bits) {
            const int b = __builtin_ctz(bits);
            s += member[b];
            bits &= bits - 1;
        }
        const double term = s / (s + comp_sum);
        total += (__builtin_popcount(t) % 2 == 1) ? term : -term;
    }
    return total;
}

}  // namespace

double realization_prob(AltMask Dj, const CovariateCell& cell, double nu, double scale) {
    if (Dj == 0) throw std::invalid_argument("realization_prob: empty realization");
    const std::vector<double> w = scaled_weights(cell, nu, scale);
    return realization_prob_from_weights(Dj, w, cell.feasible().all());
}

std::vector<std::pair<AltMask, double>> realization_probs_all(int q, const CovariateCell& cell,
                                                              double nu, double scale) {
    const int n = cell.n_alternatives();
    if (q < 2 || q > n) throw std::invalid_argument("realization_probs_all: q outside [2,|D|]");
    const int m = n - q + 1;
    const std::vector<double> w = scaled_weights(cell, nu, scale);
    const AltMask full = cell.feasible().all();
    std::vector<std::pair<AltMask, double>> out;
    // lexicographic size-m subsets
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
        AltMask mask = 0;
        for (int i : idx) mask |= 1ULL << i;
        out.emplace_back(mask, realization_prob_from_weights(mask, w, full));
        int k = m - 1;
        while (k >= 0 && idx[k] == n - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

double containment_prob_mixed(AltMask K, int q, const CovariateCell& cell,
                              const MixedLogitSpec& spec) {
    if (K == 0) throw std::invalid_argument("containment_prob_mixed: empty test set");
    double total = 0.0;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        double hit = 0.0;
        for (auto& [mask, prob] : realization_probs_all(q, cell, spec.nodes[i], spec.scale))
            if (mask & K) hit += prob;
        total += spec.weights[i] * hit;
    }
    return std::min(1.0, std::max(0.0, total));
}

}  // namespace csb
