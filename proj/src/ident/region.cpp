#include "csb/region.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "csb/parallel.hpp"

namespace csb {

namespace {

constexpr double kFeasMargin = 1e-12;  // keeps exactly-degenerate lattice nodes out

struct FracGrid {
    std::vector<double> e_fracs, v_fracs;
};

FracGrid lattice(const GridSpec& spec) {
    FracGrid g;
    for (double e = spec.e_lo_frac; e <= spec.e_hi_frac + 1e-15; e += spec.e_step_frac)
        g.e_fracs.push_back(e);
    for (double v = spec.v_lo_frac; v <= spec.v_hi_frac + 1e-15; v += spec.v_step_frac)
        g.v_fracs.push_back(v);
    return g;
}

bool frac_feasible(double e, double v) { return v + kFeasMargin < e * (1.0 - e); }

}  // namespace

std::size_t grid_node_count(const GridSpec& spec) {
    const FracGrid g = lattice(spec);
    std::size_t n = 0;
    for (double e : g.e_fracs)
        for (double v : g.v_fracs)
            if (frac_feasible(e, v)) ++n;
    return n;
}

std::vector<RegionNode> region_grid(const InequalitySystem& system, const GridSpec& spec,
                                    const std::optional<std::map<int, double>>& pi_profile,
                                    bool parallel) {
    const double lo = system.family->support_lo, hi = system.family->support_hi;
    const double w = hi - lo;
    const FracGrid g = lattice(spec);
    struct Cand {
        double e, v;
    };
    std::vector<Cand> cands;
    for (double e : g.e_fracs)
        for (double v : g.v_fracs)
            if (frac_feasible(e, v)) cands.push_back({e, v});

    std::vector<RegionNode> nodes(cands.size());
    const bool with_pi = pi_profile.has_value();
    parallel_for(static_cast<std::int64_t>(cands.size()), [&](std::int64_t i) {
        const double mean = lo + w * cands[i].e;
        const double var = w * w * cands[i].v;
        RegionNode node;
        node.mean = mean;
        node.variance = var;
        ThetaPoint theta(beta_from_moments(mean, var, lo, hi),
                         with_pi ? *pi_profile : std::map<int, double>{});
        node.gamma1 = theta.beta.gamma1;
        node.gamma2 = theta.beta.gamma2;
        const MembershipResult r = membership_enumerate(theta, system, with_pi);
        node.min_slack = r.min_slack;
        node.in = r.in;
        nodes[i] = node;
    }, parallel);
    return nodes;
}

std::vector<AdaptiveNode> adaptive_scan(const Box& box,
                                        const std::function<EvalOutcome(double, double)>& eval,
                                        const AdaptiveOptions& options) {
    // lattice indexed at the finest resolution so refined nodes dedupe exactly
    const int coarse = std::max(2, options.coarse);
    const double e_range = box.e_hi - box.e_lo, v_range = box.v_hi - box.v_lo;
    int levels = std::max(0, options.refinements);
    // stop refining below the minimum step fraction
    while (levels > 0 &&
           e_range / coarse / std::pow(2.0, levels) < options.min_step_fraction * e_range)
        --levels;
    const std::int64_t fine = static_cast<std::int64_t>(coarse) << levels;

    auto coord = [&](std::int64_t ie, std::int64_t iv) {
        return std::pair<double, double>(box.e_lo + e_range * static_cast<double>(ie) / static_cast<double>(fine),
                                         box.v_lo + v_range * static_cast<double>(iv) / static_cast<double>(fine));
    };
    auto key = [&](std::int64_t ie, std::int64_t iv) { return ie * (fine + 1) + iv; };

    std::unordered_map<std::int64_t, EvalOutcome> seen;
    std::vector<std::pair<std::int64_t, std::int64_t>> work;
    const std::int64_t step0 = fine / coarse;
    for (std::int64_t ie = 0; ie <= fine; ie += step0)
        for (std::int64_t iv = 0; iv <= fine; iv += step0) work.emplace_back(ie, iv);

    std::int64_t step = step0;
    for (int level = 0;; ++level) {
        std::vector<EvalOutcome> results(work.size());
        parallel_for(static_cast<std::int64_t>(work.size()), [&](std::int64_t i) {
            auto [e, v] = coord(work[i].first, work[i].second);
            results[i] = eval(e, v);
        }, options.parallel);
        for (std::size_t i = 0; i < work.size(); ++i) seen[key(work[i].first, work[i].second)] = results[i];

        if (level >= levels) break;
        // boundary nodes: accepted with a not-accepted lattice neighbour (or edge)
        std::vector<std::pair<std::int64_t, std::int64_t>> next;
        std::unordered_set<std::int64_t> queued;
        auto accepted_at = [&](std::int64_t ie, std::int64_t iv) -> int {
            if (ie < 0 || iv < 0 || ie > fine || iv > fine) return -1;
            auto it = seen.find(key(ie, iv));
            if (it == seen.end()) return -1;
            return (it->second.feasible && it->second.accepted) ? 1 : 0;
        };
        auto push = [&](std::int64_t ie, std::int64_t iv) {
            if (ie < 0 || iv < 0 || ie > fine || iv > fine) return;
            const std::int64_t k = key(ie, iv);
            if (seen.count(k) || queued.count(k)) return;
            queued.insert(k);
            next.emplace_back(ie, iv);
        };
        const std::int64_t half = step / 2;
        for (auto& [k, out] : seen) {
            if (!(out.feasible && out.accepted)) continue;
            const std::int64_t ie = k / (fine + 1), iv = k % (fine + 1);
            if (ie % step != 0 || iv % step != 0) continue;  // evaluate boundary at current level only
            bool boundary = false;
            for (int de = -1; de <= 1 && !boundary; ++de)
                for (int dv = -1; dv <= 1 && !boundary; ++dv) {
                    if (de == 0 && dv == 0) continue;
                    if (accepted_at(ie + de * step, iv + dv * step) != 1) boundary = true;
                }
            if (!boundary) continue;
            for (int de = -2; de <= 2; ++de)
                for (int dv = -2; dv <= 2; ++dv) push(ie + de * half, iv + dv * half);
        }
        std::sort(next.begin(), next.end());
        work = std::move(next);
        step = half;
        if (work.empty()) break;
    }

    std::vector<AdaptiveNode> out;
    out.reserve(seen.size());
    std::vector<std::int64_t> keys;
    keys.reserve(seen.size());
    for (auto& [k, o] : seen) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (std::int64_t k : keys) {
        const std::int64_t ie = k / (fine + 1), iv = k % (fine + 1);
        auto [e, v] = coord(ie, iv);
        out.push_back({e, v, seen[k]});
    }
    return out;
}

}  // namespace csb
