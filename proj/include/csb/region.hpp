#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "csb/inequality.hpp"

namespace csb {

// Moment-space (E(nu), Var(nu)) grid: fractions of the support width for the
// first coordinate and of the squared width for the second.
struct GridSpec {
    double e_lo_frac = 0.0005;
    double e_hi_frac = 0.9995;
    double e_step_frac = 0.0005;
    double v_lo_frac = 0.0005;
    double v_hi_frac = 0.25;
    double v_step_frac = 0.0005;
};

std::size_t grid_node_count(const GridSpec& spec);

struct RegionNode {
    double mean = 0.0;
    double variance = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double min_slack = 0.0;
    bool in = false;
};

// Full-lattice membership scan; infeasible moment pairs are skipped.
std::vector<RegionNode> region_grid(const InequalitySystem& system, const GridSpec& spec,
                                    const std::optional<std::map<int, double>>& pi_profile = {},
                                    bool parallel = true);

// Adaptive variant shared with inference: coarse lattice, then bisection of
// cells that straddle the accept/reject boundary.
struct AdaptiveOptions {
    int coarse = 50;
    int refinements = 2;
    double min_step_fraction = 0.0005;  // refinement halts below this fraction of the range
    bool parallel = true;
};

struct EvalOutcome {
    bool feasible = false;
    bool accepted = false;
    double stat = 0.0;
    double crit = 0.0;
};

struct AdaptiveNode {
    double mean = 0.0;
    double variance = 0.0;
    EvalOutcome out;
};

struct Box {
    double e_lo, e_hi, v_lo, v_hi;
};

std::vector<AdaptiveNode> adaptive_scan(const Box& box,
                                        const std::function<EvalOutcome(double, double)>& eval,
                                        const AdaptiveOptions& options);

}  // namespace csb
