#pragma once

namespace csb {

// Beta(gamma1, gamma2) rescaled to [support_lo, support_hi]; the preference
// prior for the risk-aversion coefficient.
struct BetaSpec {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double support_lo = 0.0;
    double support_hi = 1.0;

    BetaSpec() = default;
    BetaSpec(double g1, double g2, double lo, double hi);

    double mean() const;
    double variance() const;
    double cdf(double x) const;       // measure of [support_lo, x]
    double pdf(double x) const;
    double quantile(double u) const;  // inverse cdf
};

// Conversion between (mean, variance) on the support and shape parameters.
// Round trip is identity to ~1e-10 relative error.
BetaSpec beta_from_moments(double mean, double variance, double support_lo, double support_hi);
struct BetaMoments {
    double mean;
    double variance;
};
BetaMoments moments_from_beta(const BetaSpec& spec);

// Feasibility of a rescaled moment pair: 0 < m < 1 and 0 < v < m(1-m).
bool beta_moments_feasible(double mean, double variance, double support_lo, double support_hi);

}  // namespace csb
