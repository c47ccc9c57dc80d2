#include "csb/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace csb {

namespace {
constexpr double kTaylorCut = 1e-8;
constexpr double kExpCap = 700.0;  // exp beyond this overflows double range
}  // namespace

double cara_utility(double nu, double y) {
    if (!std::isfinite(nu) || !std::isfinite(y))
        throw std::domain_error("cara_utility: non-finite input");
    const double z = nu * y;
    if (std::abs(z) < kTaylorCut) {
        // (1 - e^{-z})/nu = y (1 - z/2 + z^2/6 - ...)
        return y * (1.0 - 0.5 * z + z * z / 6.0);
    }
    if (-z > kExpCap) throw std::domain_error("cara_utility: exp overflow");
    return (1.0 - std::exp(-z)) / nu;
}

double expected_utility(int alt, const CovariateCell& cell, double nu) {
    if (alt < 0 || alt >= cell.n_alternatives())
        throw std::invalid_argument("expected_utility: alternative outside the feasible set");
    const double p = cell.price(alt);
    const double c = cell.feasible().amount(alt);
    const double mu = cell.mu();
    return (1.0 - mu) * cara_utility(nu, -p) + mu * cara_utility(nu, -p - c);
}

double risk_premium(double nu, double loss, double prob) {
    if (!(loss > 0.0)) throw std::invalid_argument("risk_premium: loss must be positive");
    if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("risk_premium: prob outside (0,1)");
    if (nu == 0.0) return 0.0;
    const double z = nu * loss;
    if (z > kExpCap) throw std::domain_error("risk_premium: exp overflow");
    if (std::abs(z) < kTaylorCut) {
        // ln(1 + p(e^z - 1))/nu - pL ~ p(1-p) L z / 2 for small z
        return 0.5 * prob * (1.0 - prob) * loss * z;
    }
    return std::log((1.0 - prob) + prob * std::exp(z)) / nu - prob * loss;
}

double certainty_equivalent(int alt, const CovariateCell& cell, double nu) {
    const double eu = expected_utility(alt, cell, nu);
    if (std::abs(nu * eu) < kTaylorCut) {
        // CE = -ln(1 - nu EU)/nu -> EU (1 + nu EU / 2) as nu EU -> 0
        return eu * (1.0 + 0.5 * nu * eu);
    }
    const double arg = 1.0 - nu * eu;
    if (arg <= 0.0) throw std::domain_error("certainty_equivalent: utility outside CARA range");
    return -std::log(arg) / nu;
}

}  // namespace csb
