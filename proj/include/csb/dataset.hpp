#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "csb/covariate_cell.hpp"

namespace csb {

// One household: chosen alternative plus covariates. Currency is exact cents.
struct Observation {
    long long id = 0;
    int choice = -1;  // index into the feasible set
    double mu = 0.0;
    long long base_price_cents = 0;
    std::vector<long long> price_cents;  // empty when the menu is rule-derived
    double truth_nu = std::numeric_limits<double>::quiet_NaN();
    std::vector<int> truth_set;  // empty when absent
};

struct Dataset {
    FeasibleSet feasible{std::vector<double>{0.0, 1.0}};
    std::optional<PricingRule> rule;  // menus derived from base price when set
    std::vector<Observation> rows;
    bool has_truth = false;

    double price(const Observation& o, int alt) const {
        if (rule) return rule->price(alt, static_cast<double>(o.base_price_cents) / 100.0);
        return static_cast<double>(o.price_cents.at(alt)) / 100.0;
    }
    std::vector<double> menu(const Observation& o) const {
        std::vector<double> m(feasible.size());
        for (int c = 0; c < feasible.size(); ++c) m[c] = price(o, c);
        return m;
    }
};

// Distinct covariate cells (mu, base price, menu) with per-cell choice counts.
struct CellIndex {
    std::vector<double> mus;
    std::vector<double> base_prices;
    std::vector<std::vector<double>> menus;
    std::vector<int> cell_of_row;                  // per observation
    std::vector<std::vector<long long>> counts;    // [cell][alternative]
    std::vector<long long> cell_totals;

    int n_cells() const { return static_cast<int>(mus.size()); }
};

CellIndex build_cell_index(const Dataset& data);

// Per-cell empirical choice probabilities.
std::vector<std::vector<double>> empirical_choice_probs(const CellIndex& index, int n_alternatives);

}  // namespace csb
