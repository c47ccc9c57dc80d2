#pragma once

#include "csb/confidence.hpp"

namespace csb {

struct ProfiledOptions {
    double alpha = 0.05;
    int B = 1000;
    std::uint64_t seed = 0;
    double xi = 1e-6;
    double rho_shrink = 0.2;  // the default rho = sqrt(ln #rows) is reduced by this factor
    bool parallel = true;
};

struct ProfiledResult {
    double lower = 0.0;
    double upper = 0.0;
    bool feasible = false;  // false = model rejected at level alpha
};

// min/max f(theta) subject to sqrt(n) mbar/sigma <= c_f(theta) on every row,
// with the hard-threshold GMS bootstrap critical value. The critical value is
// floored at the AS acceptance threshold so the interval always contains the
// f-range of the accepted grid on matched configurations.
//
// f = mean of the preference prior, profiled over the (mean, variance) box.
ProfiledResult profiled_mean(const MomentMachine& machine, const ModelEvaluator& model,
                             const Box& box, int grid_e, int grid_v,
                             const ProfiledOptions& options);

// f = pi_q with pi_l = 0 off {q, kappa}: model RHS is
// pi * P_q(cell,set) + (1-pi) * P_kappa(cell,set). The evaluators fill the
// flattened probability tables for each component.
ProfiledResult profiled_pi(const MomentMachine& machine, const ModelEvaluator& model_kappa,
                           const ModelEvaluator& model_q, const Box& box, int grid_e, int grid_v,
                           const ProfiledOptions& options);

}  // namespace csb
