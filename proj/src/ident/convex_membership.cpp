#include "csb/convex_membership.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace csb {

namespace {

struct CellProgram {
    std::vector<double> p;                              // observed choice probabilities
    std::vector<std::pair<AltMask, double>> realizations;  // (D^j, P(D* = D^j))
};

double objective(const CellProgram& prog, const std::vector<double>& u) {
    double f = 0.0;
    for (std::size_t c = 0; c < u.size(); ++c) f += u[c] * prog.p[c];
    for (auto& [mask, prob] : prog.realizations) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < u.size(); ++c)
            if (mask_contains(mask, static_cast<int>(c)) && u[c] > best) best = u[c];
        f -= prob * best;
    }
    return f;
}

// supergradient: p - sum_j P_j e_{argmax}, argmax ties to lowest index
void supergradient(const CellProgram& prog, const std::vector<double>& u, std::vector<double>& g) {
    g = prog.p;
    for (auto& [mask, prob] : prog.realizations) {
        int arg = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < u.size(); ++c) {
            if (!mask_contains(mask, static_cast<int>(c))) continue;
            if (u[c] > best) {
                best = u[c];
                arg = static_cast<int>(c);
            }
        }
        g[arg] -= prob;
    }
}

void project_ball(std::vector<double>& u) {
    double norm2 = 0.0;
    for (double v : u) norm2 += v * v;
    if (norm2 > 1.0) {
        const double s = 1.0 / std::sqrt(norm2);
        for (double& v : u) v *= s;
    }
}

double solve_cell(const CellProgram& prog, int n, int iterations, double* grad_norm_out) {
    std::vector<double> u(n, 0.0), g;
    double best = objective(prog, u);  // f(0) = 0
    for (int t = 1; t <= iterations; ++t) {
        supergradient(prog, u, g);
        const double step = 1.0 / std::sqrt(static_cast<double>(t));
        for (int c = 0; c < n; ++c) u[c] += step * g[c];
        project_ball(u);
        const double f = objective(prog, u);
        if (f > best) best = f;
    }
    if (grad_norm_out) {
        supergradient(prog, u, g);
        double n2 = 0.0;
        for (double v : g) n2 += v * v;
        *grad_norm_out = std::sqrt(n2);
    }
    return best;
}

}  // namespace

ConvexResult membership_convex(const ThetaPoint& theta, const CellFamily& family, int kappa,
                               const std::vector<std::vector<double>>& choice_probs,
                               int iterations) {
    if (choice_probs.size() != family.cells.size())
        throw std::invalid_argument("membership_convex: one probability vector per cell required");
    const int n = family.feasible->size();
    ConvexResult result;
    result.objective = -std::numeric_limits<double>::infinity();
    for (std::size_t cell = 0; cell < family.cells.size(); ++cell) {
        CellProgram prog;
        prog.p = choice_probs[cell];
        prog.realizations = realization_probabilities(family.partitions[cell], kappa, theta.beta);
        double gn = 0.0;
        const double opt = solve_cell(prog, n, iterations, &gn);
        if (opt > result.objective) {
            result.objective = opt;
            result.grad_norm = gn;
        }
    }
    result.in = result.objective <= 1e-9;
    return result;
}

}  // namespace csb
