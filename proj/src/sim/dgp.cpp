#include "csb/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "csb/parallel.hpp"
#include "csb/utility.hpp"

namespace csb {

namespace {

std::vector<int> uniform_subset(int n, int q, CounterRng& rng) {
    // partial Fisher-Yates over 0..n-1
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < q; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + q);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> run_of(int start, int q) {
    std::vector<int> out(q);
    std::iota(out.begin(), out.end(), start);
    return out;
}

}  // namespace

std::vector<int> draw_choice_set(const DgpConfig& config, double nu, double base_price,
                                 CounterRng& rng) {
    const int n = config.feasible.size();
    switch (config.process) {
        case ProcessKind::FP1: {
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        case ProcessKind::FP2: {
            const int q = config.fp2_q;
            if (q < 2 || q > n) throw std::invalid_argument("draw_choice_set: FP2 q outside [2,|D|]");
            switch (config.fp2_mode) {
                case Fp2Mode::None:
                    return uniform_subset(n, q, rng);
                case Fp2Mode::WithNu: {
                    const double median = config.nu_law.quantile(0.5);
                    const bool high = nu >= median;
                    const bool low_deductibles = high == config.high_nu_gets_low_deductibles;
                    return low_deductibles ? run_of(0, q) : run_of(n - q, q);
                }
                case Fp2Mode::WithPbar: {
                    const double pmin = *std::min_element(config.base_price_support.begin(),
                                                          config.base_price_support.end());
                    const double pmax = *std::max_element(config.base_price_support.begin(),
                                                          config.base_price_support.end());
                    double t = pmax > pmin ? (base_price - pmin) / (pmax - pmin) : 0.0;
                    // 1-based start index 1..n-q+1, round half up
                    const int start = static_cast<int>(std::floor(1.0 + t * (n - q) + 0.5));
                    return run_of(std::clamp(start, 1, n - q + 1) - 1, q);
                }
            }
            throw std::logic_error("draw_choice_set: bad FP2 mode");
        }
        case ProcessKind::UR: {
            const int kappa = config.min_size;
            std::vector<double> w = config.ur_size_weights;
            if (w.empty()) w.assign(n - kappa + 1, 1.0);
            if (static_cast<int>(w.size()) != n - kappa + 1)
                throw std::invalid_argument("draw_choice_set: UR size-law length mismatch");
            double total = std::accumulate(w.begin(), w.end(), 0.0);
            double u = rng.uniform() * total;
            int q = kappa;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (u < w[i] || i + 1 == w.size()) {
                    q = kappa + static_cast<int>(i);
                    break;
                }
                u -= w[i];
            }
            return uniform_subset(n, q, rng);
        }
        case ProcessKind::ASR: {
            if (static_cast<int>(config.asr_phi.size()) != n)
                throw std::invalid_argument("draw_choice_set: ASR phi length mismatch");
            for (long long attempt = 0; attempt < 1000000; ++attempt) {
                std::vector<int> set;
                for (int c = 0; c < n; ++c)
                    if (rng.uniform() < config.asr_phi[c]) set.push_back(c);
                if (static_cast<int>(set.size()) >= config.min_size) return set;
            }
            throw std::runtime_error("draw_choice_set: ASR rejection did not terminate");
        }
    }
    throw std::logic_error("draw_choice_set: bad process");
}

Dataset simulate_dataset(const DgpConfig& config) {
    if (config.n <= 0) throw std::invalid_argument("simulate_dataset: n must be positive");
    if (config.base_price_support.empty())
        throw std::invalid_argument("simulate_dataset: empty base-price support");
    config.pricing.validate(config.feasible.size());

    Dataset data;
    data.feasible = config.feasible;
    data.rule = config.pricing;
    data.has_truth = config.keep_truth;
    data.rows.resize(config.n);

    parallel_for(config.n, [&](std::int64_t i) {
        CounterRng rng(config.seed, static_cast<std::uint64_t>(i));
        Observation obs;
        obs.id = i + 1;
        const std::size_t pidx = rng.below(config.base_price_support.size());
        const double pbar = config.base_price_support[pidx];
        const double nu = config.nu_law.quantile(rng.uniform());
        const std::vector<int> cset = draw_choice_set(config, nu, pbar, rng);

        CovariateCell cell(config.feasible, config.mu, pbar, config.pricing);
        int best = cset.front();
        if (config.mixed_sigma > 0.0) {
            double best_val = -std::numeric_limits<double>::infinity();
            for (int c : cset) {
                const double v =
                    certainty_equivalent(c, cell, nu) + config.mixed_sigma * rng.gumbel();
                if (v > best_val) {
                    best_val = v;
                    best = c;
                }
            }
        } else {
            double best_val = -std::numeric_limits<double>::infinity();
            for (int c : cset) {
                const double v = expected_utility(c, cell, nu);
                if (v > best_val) {
                    best_val = v;
                    best = c;
                }
            }
        }
        obs.choice = best;
        obs.mu = config.mu;
        obs.base_price_cents = std::llround(pbar * 100.0);
        if (config.keep_truth) {
            obs.truth_nu = nu;
            obs.truth_set = cset;
        }
        data.rows[i] = std::move(obs);
    });
    return data;
}

}  // namespace csb
