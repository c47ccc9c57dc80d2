#include "csb/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csb/parallel.hpp"

namespace csb {

namespace {

struct FeasibilityCheck {
    const MomentMachine* machine;
    const MomentMachine::BootstrapCounts* boot;
    double alpha, xi, rho;

    // true when theta (through its probability table) satisfies every
    // profiled constraint at the surrogate critical value
    bool feasible(const std::vector<double>& P) const {
        const MomentTable table = machine->moments(P);
        const MomentMachine::CriticalValues cv =
            machine->bootstrap_critical(P, table, *boot, alpha, xi);
        const double floor_as = std::sqrt(std::max(cv.as_critical + xi, 0.0));
        const double c_f = std::max(cv.hard_critical + 1.0 / rho, floor_as);
        const double sqrtn = std::sqrt(static_cast<double>(machine->n()));
        for (const MomentRow& row : table.rows)
            if (sqrtn * row.mbar / row.sigma > c_f) return false;
        return true;
    }
};

}  // namespace

ProfiledResult profiled_mean(const MomentMachine& machine, const ModelEvaluator& model,
                             const Box& box, int grid_e, int grid_v,
                             const ProfiledOptions& options) {
    const MomentMachine::BootstrapCounts boot =
        machine.make_bootstrap(options.B, options.seed, options.parallel);
    const double rho = (1.0 - options.rho_shrink) *
                       std::sqrt(std::log(std::max(3.0, static_cast<double>(machine.n_rows()))));
    FeasibilityCheck check{&machine, &boot, options.alpha, options.xi, rho};

    struct Node {
        double e, v;
    };
    std::vector<Node> nodes;
    for (int i = 0; i <= grid_e; ++i)
        for (int j = 0; j <= grid_v; ++j)
            nodes.push_back({box.e_lo + (box.e_hi - box.e_lo) * i / grid_e,
                             box.v_lo + (box.v_hi - box.v_lo) * j / grid_v});
    std::vector<char> ok(nodes.size(), 0);
    parallel_for(static_cast<std::int64_t>(nodes.size()), [&](std::int64_t i) {
        std::vector<double> P(static_cast<std::size_t>(machine.n_cells()) * machine.n_sets());
        if (!model(nodes[i].e, nodes[i].v, P)) return;
        ok[i] = check.feasible(P) ? 1 : 0;
    }, options.parallel);

    ProfiledResult res;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (ok[i]) {
            lo = std::min(lo, nodes[i].e);
            hi = std::max(hi, nodes[i].e);
        }
    if (hi >= lo) {
        res.feasible = true;
        res.lower = lo;
        res.upper = hi;
    }
    return res;
}

ProfiledResult profiled_pi(const MomentMachine& machine, const ModelEvaluator& model_kappa,
                           const ModelEvaluator& model_q, const Box& box, int grid_e, int grid_v,
                           const ProfiledOptions& options) {
    const MomentMachine::BootstrapCounts boot =
        machine.make_bootstrap(options.B, options.seed, options.parallel);
    const double rho = (1.0 - options.rho_shrink) *
                       std::sqrt(std::log(std::max(3.0, static_cast<double>(machine.n_rows()))));
    FeasibilityCheck check{&machine, &boot, options.alpha, options.xi, rho};

    struct Node {
        double e, v;
    };
    std::vector<Node> nodes;
    for (int i = 0; i <= grid_e; ++i)
        for (int j = 0; j <= grid_v; ++j)
            nodes.push_back({box.e_lo + (box.e_hi - box.e_lo) * i / grid_e,
                             box.v_lo + (box.v_hi - box.v_lo) * j / grid_v});

    // coarse pi sweep then a 0.01-step refinement around the feasible extremes
    const std::size_t tab = static_cast<std::size_t>(machine.n_cells()) * machine.n_sets();
    std::vector<double> best_lo(nodes.size(), 2.0), best_hi(nodes.size(), -1.0);
    parallel_for(static_cast<std::int64_t>(nodes.size()), [&](std::int64_t i) {
        std::vector<double> Pk(tab), Pq(tab), P(tab);
        if (!model_kappa(nodes[i].e, nodes[i].v, Pk)) return;
        if (!model_q(nodes[i].e, nodes[i].v, Pq)) return;
        auto feasible_at = [&](double pi) {
            for (std::size_t t = 0; t < tab; ++t) P[t] = pi * Pq[t] + (1.0 - pi) * Pk[t];
            return check.feasible(P);
        };
        double lo = 2.0, hi = -1.0;
        for (double pi = 0.0; pi <= 1.0 + 1e-9; pi += 0.05) {
            if (feasible_at(pi)) {
                lo = std::min(lo, pi);
                hi = std::max(hi, pi);
            }
        }
        if (hi < lo) return;
        for (double pi = std::max(0.0, lo - 0.049); pi < lo; pi += 0.01)
            if (feasible_at(pi)) {
                lo = pi;
                break;
            }
        for (double pi = std::min(1.0, hi + 0.049); pi > hi; pi -= 0.01)
            if (feasible_at(pi)) {
                hi = pi;
                break;
            }
        best_lo[i] = lo;
        best_hi[i] = hi;
    }, options.parallel);

    ProfiledResult res;
    double lo = 2.0, hi = -1.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        lo = std::min(lo, best_lo[i]);
        hi = std::max(hi, best_hi[i]);
    }
    if (hi >= lo && hi >= 0.0) {
        res.feasible = true;
        res.lower = lo;
        res.upper = hi;
    }
    return res;
}

}  // namespace csb
