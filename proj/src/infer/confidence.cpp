#include "csb/confidence.hpp"

namespace csb {

AsNode as_evaluate(const MomentMachine& machine, const ModelEvaluator& model,
                   const MomentMachine::BootstrapCounts& boot, double mean, double variance,
                   double alpha, double xi) {
    AsNode node;
    node.mean = mean;
    node.variance = variance;
    std::vector<double> P(static_cast<std::size_t>(machine.n_cells()) * machine.n_sets());
    if (!model(mean, variance, P)) return node;
    node.feasible = true;
    const MomentTable table = machine.moments(P);
    node.tstat = ks_statistic(table);
    node.critical = machine.bootstrap_critical(P, table, boot, alpha, xi).as_critical;
    node.accept = node.tstat <= node.critical + xi;
    return node;
}

std::vector<AsNode> as_confidence_set(const MomentMachine& machine, const ModelEvaluator& model,
                                      const Box& box, const AsOptions& options) {
    const MomentMachine::BootstrapCounts boot =
        machine.make_bootstrap(options.B, options.seed, options.adaptive.parallel);
    auto eval = [&](double mean, double variance) {
        const AsNode node =
            as_evaluate(machine, model, boot, mean, variance, options.alpha, options.xi);
        EvalOutcome out;
        out.feasible = node.feasible;
        out.accepted = node.accept;
        out.stat = node.tstat;
        out.crit = node.critical;
        return out;
    };
    // bootstrap tables are shared read-only across node evaluations
    const std::vector<AdaptiveNode> scanned = adaptive_scan(box, eval, options.adaptive);
    std::vector<AsNode> out;
    out.reserve(scanned.size());
    for (const AdaptiveNode& s : scanned) {
        AsNode node;
        node.mean = s.mean;
        node.variance = s.variance;
        node.feasible = s.out.feasible;
        node.accept = s.out.accepted;
        node.tstat = s.out.stat;
        node.critical = s.out.crit;
        out.push_back(node);
    }
    return out;
}

}  // namespace csb
