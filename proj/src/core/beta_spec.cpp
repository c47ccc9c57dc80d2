#include "csb/beta_spec.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <stdexcept>

namespace csb {

BetaSpec::BetaSpec(double g1, double g2, double lo, double hi)
    : gamma1(g1), gamma2(g2), support_lo(lo), support_hi(hi) {
    if (!(std::isfinite(g1) && std::isfinite(g2) && g1 > 0.0 && g2 > 0.0))
        throw std::invalid_argument("BetaSpec: shapes must be finite and positive");
    if (!(hi > lo)) throw std::invalid_argument("BetaSpec: support_hi must exceed support_lo");
}

double BetaSpec::mean() const {
    return support_lo + (support_hi - support_lo) * gamma1 / (gamma1 + gamma2);
}

double BetaSpec::variance() const {
    const double s = gamma1 + gamma2;
    const double w = support_hi - support_lo;
    return w * w * gamma1 * gamma2 / (s * s * (s + 1.0));
}

double BetaSpec::cdf(double x) const {
    if (x <= support_lo) return 0.0;
    if (x >= support_hi) return 1.0;
    const double t = (x - support_lo) / (support_hi - support_lo);
    return boost::math::ibeta(gamma1, gamma2, t);
}

double BetaSpec::pdf(double x) const {
    if (x < support_lo || x > support_hi) return 0.0;
    const double w = support_hi - support_lo;
    const double t = (x - support_lo) / w;
    return boost::math::ibeta_derivative(gamma1, gamma2, t) / w;
}

double BetaSpec::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("BetaSpec::quantile: u outside [0,1]");
    const double t = boost::math::ibeta_inv(gamma1, gamma2, u);
    return support_lo + (support_hi - support_lo) * t;
}

bool beta_moments_feasible(double mean, double variance, double lo, double hi) {
    if (!(hi > lo)) return false;
    const double w = hi - lo;
    const double m = (mean - lo) / w;
    const double v = variance / (w * w);
    return m > 0.0 && m < 1.0 && v > 0.0 && v < m * (1.0 - m);
}

BetaSpec beta_from_moments(double mean, double variance, double lo, double hi) {
    if (!beta_moments_feasible(mean, variance, lo, hi))
        throw std::domain_error("beta_from_moments: moment pair outside the feasible Beta set");
    const double w = hi - lo;
    const double m = (mean - lo) / w;
    const double v = variance / (w * w);
    const double s = m * (1.0 - m) / v - 1.0;
    return BetaSpec(m * s, (1.0 - m) * s, lo, hi);
}

BetaMoments moments_from_beta(const BetaSpec& spec) {
    return {spec.mean(), spec.variance()};
}

}  // namespace csb
