#pragma once

#include <vector>

#include "csb/feasible_set.hpp"

namespace csb {

// Pricing rule p_c = g(c) * pbar + zeta with g tabulated per alternative.
struct PricingRule {
    std::vector<double> g;  // strictly decreasing, positive
    double zeta = 0.0;      // flat offset, dollars

    void validate(int n_alternatives) const;
    double price(int alt, double base_price) const { return g.at(alt) * base_price + zeta; }
};

// One (claim probability, base price) configuration and its premium menu.
// Prices are dollars; exact-cent bookkeeping lives in the dataset layer.
class CovariateCell {
  public:
    CovariateCell(const FeasibleSet& feasible, double mu, double base_price,
                  std::vector<double> price_menu);
    CovariateCell(const FeasibleSet& feasible, double mu, double base_price,
                  const PricingRule& rule);

    const FeasibleSet& feasible() const { return *feasible_; }
    int n_alternatives() const { return feasible_->size(); }
    double mu() const { return mu_; }
    double base_price() const { return base_price_; }
    double price(int alt) const { return prices_.at(alt); }
    const std::vector<double>& prices() const { return prices_; }

  private:
    const FeasibleSet* feasible_;
    double mu_;
    double base_price_;
    std::vector<double> prices_;
};

}  // namespace csb
