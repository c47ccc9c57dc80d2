#include "csb/covariate_cell.hpp"

#include <stdexcept>

namespace csb {

void PricingRule::validate(int n_alternatives) const {
    if (static_cast<int>(g.size()) != n_alternatives)
        throw std::invalid_argument("PricingRule: g must be tabulated per alternative");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0)) throw std::invalid_argument("PricingRule: g must be positive");
        if (i > 0 && !(g[i] < g[i - 1]))
            throw std::invalid_argument("PricingRule: g must be strictly decreasing");
    }
}

CovariateCell::CovariateCell(const FeasibleSet& feasible, double mu, double base_price,
                             std::vector<double> price_menu)
    : feasible_(&feasible), mu_(mu), base_price_(base_price), prices_(std::move(price_menu)) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("CovariateCell: mu must lie in (0,1)");
    if (base_price < 0.0) throw std::invalid_argument("CovariateCell: negative base price");
    if (static_cast<int>(prices_.size()) != feasible.size())
        throw std::invalid_argument("CovariateCell: menu size mismatch");
}

CovariateCell::CovariateCell(const FeasibleSet& feasible, double mu, double base_price,
                             const PricingRule& rule)
    : feasible_(&feasible), mu_(mu), base_price_(base_price) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("CovariateCell: mu must lie in (0,1)");
    if (base_price < 0.0) throw std::invalid_argument("CovariateCell: negative base price");
    rule.validate(feasible.size());
    prices_.reserve(feasible.size());
    for (int c = 0; c < feasible.size(); ++c) prices_.push_back(rule.price(c, base_price));
}

}  // namespace csb
