#pragma once

#include <cstdint>

#include "csb/beta_spec.hpp"
#include "csb/dataset.hpp"
#include "csb/rng.hpp"

namespace csb {

enum class ProcessKind { FP1, FP2, UR, ASR };
enum class Fp2Mode { None, WithNu, WithPbar };

struct DgpConfig {
    FeasibleSet feasible{std::vector<double>{0.0, 1.0}};
    double mu = 0.1;
    std::vector<double> base_price_support;  // dollars, drawn uniformly
    PricingRule pricing;
    BetaSpec nu_law;

    ProcessKind process = ProcessKind::FP1;
    int fp2_q = 0;
    Fp2Mode fp2_mode = Fp2Mode::None;
    // documented direction: agents with nu at or above the median draw the q
    // lowest deductibles, agents below the median the q highest; flip to swap
    bool high_nu_gets_low_deductibles = true;

    int min_size = 2;                      // kappa floor for UR/ASR conditioning
    std::vector<double> ur_size_weights;   // over sizes min_size..|D|; uniform when empty
    std::vector<double> asr_phi;           // per-alternative inclusion probabilities

    double mixed_sigma = 0.0;  // > 0 adds Gumbel noise (certainty-equivalent dollars)

    long long n = 0;
    std::uint64_t seed = 0;
    bool keep_truth = true;
};

std::vector<int> draw_choice_set(const DgpConfig& config, double nu, double base_price,
                                 CounterRng& rng);

Dataset simulate_dataset(const DgpConfig& config);

}  // namespace csb
