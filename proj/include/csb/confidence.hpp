#pragma once

#include "csb/moments.hpp"
#include "csb/region.hpp"

namespace csb {

struct AsOptions {
    double alpha = 0.05;
    int B = 1000;
    std::uint64_t seed = 0;
    double xi = 1e-6;
    AdaptiveOptions adaptive;
};

struct AsNode {
    double mean = 0.0;
    double variance = 0.0;
    double tstat = 0.0;
    double critical = 0.0;
    bool feasible = false;
    bool accept = false;
};

// Evaluates the model containment probabilities, flattened [cell*n_sets+set],
// for the Beta prior with the given moments. Returns false when the moment
// pair is infeasible.
using ModelEvaluator = std::function<bool(double mean, double variance, std::vector<double>& P)>;

// theta accepted iff T_n(theta) <= c_hat(theta) + xi, scanned adaptively over
// the moment box. The bootstrap count tables are built once from (seed, B).
std::vector<AsNode> as_confidence_set(const MomentMachine& machine, const ModelEvaluator& model,
                                      const Box& box, const AsOptions& options);

// Single-theta evaluation (used by the nesting checks and the profiled floor).
AsNode as_evaluate(const MomentMachine& machine, const ModelEvaluator& model,
                   const MomentMachine::BootstrapCounts& boot, double mean, double variance,
                   double alpha, double xi);

}  // namespace csb
