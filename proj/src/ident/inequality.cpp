#include "csb/inequality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace csb {

CellFamily make_cell_family(FeasibleSet feasible,
                            const std::vector<std::pair<double, double>>& mu_pbar,
                            const PricingRule& rule, double lo, double hi) {
    CellFamily fam;
    fam.feasible = std::make_shared<const FeasibleSet>(std::move(feasible));
    fam.support_lo = lo;
    fam.support_hi = hi;
    fam.cells.reserve(mu_pbar.size());
    for (auto& [mu, pbar] : mu_pbar) fam.cells.emplace_back(*fam.feasible, mu, pbar, rule);
    fam.partitions.reserve(fam.cells.size());
    for (const auto& c : fam.cells) fam.partitions.emplace_back(c, lo, hi);
    return fam;
}

CellFamily make_cell_family(FeasibleSet feasible, const std::vector<double>& mus,
                            const std::vector<std::vector<double>>& menus,
                            const std::vector<double>& base_prices, double lo, double hi) {
    if (mus.size() != menus.size() || mus.size() != base_prices.size())
        throw std::invalid_argument("make_cell_family: size mismatch");
    CellFamily fam;
    fam.feasible = std::make_shared<const FeasibleSet>(std::move(feasible));
    fam.support_lo = lo;
    fam.support_hi = hi;
    fam.cells.reserve(mus.size());
    for (std::size_t i = 0; i < mus.size(); ++i)
        fam.cells.emplace_back(*fam.feasible, mus[i], base_prices[i], menus[i]);
    fam.partitions.reserve(fam.cells.size());
    for (const auto& c : fam.cells) fam.partitions.emplace_back(c, lo, hi);
    return fam;
}

ContainmentTable::ContainmentTable(const std::vector<RankPartition>& partitions,
                                   const std::vector<AltMask>& sets, int q)
    : n_cells_(static_cast<int>(partitions.size())), n_sets_(static_cast<int>(sets.size())) {
    bounds_.resize(static_cast<std::size_t>(n_cells_) * n_sets_);
    for (int c = 0; c < n_cells_; ++c) {
        const RankPartition& part = partitions[c];
        for (int s = 0; s < n_sets_; ++s) {
            auto& iv = bounds_[static_cast<std::size_t>(c) * n_sets_ + s];
            double open_lo = 0.0;
            bool open = false;
            for (int i = 0; i < part.n_intervals(); ++i) {
                const bool hit = (part.dstar(i, q) & sets[s]) != 0;
                if (hit && !open) {
                    open = true;
                    open_lo = part.lower(i);
                } else if (!hit && open) {
                    open = false;
                    iv.push_back(open_lo);
                    iv.push_back(part.lower(i));
                }
            }
            if (open) {
                iv.push_back(open_lo);
                iv.push_back(part.support_hi());
            }
        }
    }
}

double ContainmentTable::prob(int cell, int set, const BetaSpec& beta) const {
    const auto& iv = bounds_.at(static_cast<std::size_t>(cell) * n_sets_ + set);
    double p = 0.0;
    for (std::size_t i = 0; i + 1 < iv.size(); i += 2) p += beta.cdf(iv[i + 1]) - beta.cdf(iv[i]);
    return std::min(1.0, std::max(0.0, p));
}

double InequalitySystem::lhs(int cell, AltMask K) const {
    if (cell < 0 || cell >= static_cast<int>(choice_probs.size()))
        throw std::out_of_range("InequalitySystem: missing empirical cell");
    const auto& probs = choice_probs[cell];
    double p = 0.0;
    for (std::size_t c = 0; c < probs.size(); ++c)
        if (mask_contains(K, static_cast<int>(c))) p += probs[c];
    return p;
}

InequalitySystem build_system(const CellFamily& family, TestSetCollection collection,
                              std::vector<std::vector<double>> choice_probs, int kappa) {
    if (choice_probs.size() != family.cells.size())
        throw std::invalid_argument("build_system: one choice-probability vector per cell required");
    InequalitySystem sys;
    sys.family = &family;
    sys.collection = std::move(collection);
    sys.choice_probs = std::move(choice_probs);
    sys.kappa = kappa;
    const int n = family.feasible->size();
    sys.tables.resize(n + 1);
    sys.tables[kappa] = ContainmentTable(family.partitions, sys.collection.sets, kappa);
    return sys;
}

void ensure_tables(InequalitySystem& system, const std::vector<int>& qs) {
    for (int q : qs)
        if (system.tables.at(q).n_sets() == 0)
            system.tables[q] = ContainmentTable(system.family->partitions, system.collection.sets, q);
}

namespace {

const ContainmentTable& table_for_q(const InequalitySystem& system, int q) {
    const auto& t = system.tables.at(q);
    if (t.n_sets() == 0)
        throw std::logic_error("InequalitySystem: containment table for requested q not built");
    return t;
}

int set_index(const InequalitySystem& system, AltMask K) {
    for (std::size_t i = 0; i < system.collection.sets.size(); ++i)
        if (system.collection.sets[i] == K) return static_cast<int>(i);
    return -1;
}

double rhs_value(const ThetaPoint& theta, int set_idx, int cell, const InequalitySystem& system,
                 bool with_pi) {
    if (!with_pi) return table_for_q(system, system.kappa).prob(cell, set_idx, theta.beta);
    if (!theta.has_pi()) throw std::invalid_argument("evaluate_inequality: theta carries no pi");
    double rhs = 0.0;
    for (auto& [q, mass] : theta.pi) {
        if (mass == 0.0) continue;
        rhs += mass * table_for_q(system, q).prob(cell, set_idx, theta.beta);
    }
    return rhs;
}

}  // namespace

double evaluate_inequality(const ThetaPoint& theta, AltMask K, int cell,
                           const InequalitySystem& system, bool with_pi) {
    const int idx = set_index(system, K);
    if (idx < 0) {
        // off-collection set: evaluate directly from the partition
        if (!with_pi)
            return containment_probability(system.family->partitions.at(cell), system.kappa, K,
                                           theta.beta) -
                   system.lhs(cell, K);
        if (!theta.has_pi()) throw std::invalid_argument("evaluate_inequality: theta carries no pi");
        double rhs = 0.0;
        for (auto& [q, mass] : theta.pi)
            rhs += mass * containment_probability(system.family->partitions.at(cell), q, K, theta.beta);
        return rhs - system.lhs(cell, K);
    }
    return rhs_value(theta, idx, cell, system, with_pi) - system.lhs(cell, K);
}

double kappa_one_variant(const ThetaPoint& theta, AltMask K, int cell,
                         const InequalitySystem& system, double pi_bar_1) {
    if (!(pi_bar_1 >= 0.0 && pi_bar_1 < 1.0))
        throw std::invalid_argument("kappa_one_variant: pi_bar_1 outside [0,1)");
    const double p2 = containment_probability(system.family->partitions.at(cell), 2, K, theta.beta);
    return pi_bar_1 + (1.0 - pi_bar_1) * p2 - system.lhs(cell, K);
}

MembershipResult membership_enumerate(const ThetaPoint& theta, const InequalitySystem& system,
                                      bool with_pi) {
    double min_slack = std::numeric_limits<double>::infinity();
    const int n_cells = static_cast<int>(system.family->cells.size());
    for (int cell = 0; cell < n_cells; ++cell) {
        for (std::size_t s = 0; s < system.collection.sets.size(); ++s) {
            const double slack = rhs_value(theta, static_cast<int>(s), cell, system, with_pi) -
                                 system.lhs(cell, system.collection.sets[s]);
            if (slack < min_slack) min_slack = slack;
        }
    }
    return {min_slack >= -1e-12, min_slack};
}

}  // namespace csb
