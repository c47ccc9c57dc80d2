#include "csb/pi_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "csb/parallel.hpp"

namespace csb {

PiBound pi_bound_for_q(const CellFamily& family, int kappa, int q,
                       const std::vector<std::vector<double>>& choice_probs,
                       const GridSpec& grid, bool parallel) {
    PiBound bound;
    bound.q = q;
    bound.lower = 0.0;

    const TestSetCollection coll =
        generate_test_sets(family.partitions, kappa, TestSetTarget::PiUpper, q);
    const ContainmentTable tab_k(family.partitions, coll.sets, kappa);
    const ContainmentTable tab_q(family.partitions, coll.sets, q);

    const double lo = family.support_lo, hi = family.support_hi, w = hi - lo;
    struct Cand {
        double e, v;
    };
    std::vector<Cand> cands;
    for (double e = grid.e_lo_frac; e <= grid.e_hi_frac + 1e-15; e += grid.e_step_frac)
        for (double v = grid.v_lo_frac; v <= grid.v_hi_frac + 1e-15; v += grid.v_step_frac)
            if (v + 1e-12 < e * (1.0 - e)) cands.push_back({e, v});

    const int n_cells = static_cast<int>(family.cells.size());
    const int n_sets = static_cast<int>(coll.sets.size());
    std::vector<double> node_upper(cands.size());
    parallel_for(static_cast<std::int64_t>(cands.size()), [&](std::int64_t i) {
        const BetaSpec beta = beta_from_moments(lo + w * cands[i].e, w * w * cands[i].v, lo, hi);
        // LHS <= pi*Cq + (1-pi)*Ck row by row; Cq <= Ck so each row caps pi above
        double ub = 1.0;
        for (int cell = 0; cell < n_cells && ub > -1.0; ++cell) {
            for (int s = 0; s < n_sets; ++s) {
                double lhs = 0.0;
                for (int c = 0; c < family.feasible->size(); ++c)
                    if (mask_contains(coll.sets[s], c)) lhs += choice_probs[cell][c];
                const double ck = tab_k.prob(cell, s, beta);
                const double cq = tab_q.prob(cell, s, beta);
                const double gap = ck - cq;
                if (gap <= 1e-14) {
                    if (lhs > ck + 1e-12) {
                        ub = -1.0;  // gamma node infeasible at any pi
                        break;
                    }
                    continue;
                }
                ub = std::min(ub, (ck - lhs + 1e-12) / gap);
            }
        }
        node_upper[i] = ub;
    }, parallel);

    double best = -1.0;
    for (double u : node_upper) best = std::max(best, u);
    if (best < 0.0) {
        bound.feasible = false;
        bound.upper = 0.0;
        return bound;
    }
    bound.upper = std::min(1.0, std::max(0.0, best));
    return bound;
}

std::vector<PiBound> pi_bounds(const CellFamily& family, int kappa,
                               const std::vector<std::vector<double>>& choice_probs,
                               const GridSpec& grid, bool parallel) {
    std::vector<PiBound> out;
    const int n = family.feasible->size();
    for (int q = kappa + 1; q <= n; ++q)
        out.push_back(pi_bound_for_q(family, kappa, q, choice_probs, grid, parallel));
    return out;
}

}  // namespace csb
