#include "csb/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace csb {

namespace {
constexpr double kSigmaFloor = 1e-10;
}

double ks_statistic(const MomentTable& table) {
    double worst = 0.0;
    for (const MomentRow& r : table.rows) {
        const double z = r.mbar / r.sigma;
        if (z > worst) worst = z;
    }
    return static_cast<double>(table.n) * worst * worst;
}

MomentMachine::MomentMachine(const Dataset& data, const InstrumentCells& instruments,
                             TestSetCollection collection)
    : cells_(build_cell_index(data)), collection_(std::move(collection)) {
    n_ = static_cast<long long>(data.rows.size());
    J_ = instruments.J;
    const int n_sets = static_cast<int>(collection_.sets.size());
    const int nc = cells_.n_cells();

    cube_of_cell_.resize(nc);
    for (int j = 0; j < nc; ++j)
        cube_of_cell_[j] = instruments.quantile_cube_of(cells_.mus[j], cells_.base_prices[j]);

    cells_in_cube_.assign(J_, {});
    for (int j = 0; j < nc; ++j) cells_in_cube_[cube_of_cell_[j]].push_back(j);
    // the all-data cube (index J-1) covers every cell
    cells_in_cube_[J_ - 1].clear();
    for (int j = 0; j < nc; ++j) cells_in_cube_[J_ - 1].push_back(j);

    count_in_set_.assign(nc, std::vector<std::int64_t>(n_sets, 0));
    for (int j = 0; j < nc; ++j)
        for (int s = 0; s < n_sets; ++s) {
            std::int64_t c = 0;
            for (int a = 0; a < static_cast<int>(cells_.counts[j].size()); ++a)
                if (mask_contains(collection_.sets[s], a)) c += cells_.counts[j][a];
            count_in_set_[j][s] = c;
        }

    for (int cube = 0; cube < J_; ++cube) {
        if (cells_in_cube_[cube].empty() && cube != J_ - 1) continue;  // empty cubes never bind
        for (int s = 0; s < n_sets; ++s) {
            row_cube_.push_back(cube);
            row_set_.push_back(s);
        }
    }
}

MomentTable MomentMachine::moments(const std::vector<double>& P) const {
    const int n_sets = static_cast<int>(collection_.sets.size());
    MomentTable table;
    table.n = n_;
    table.rows.resize(row_cube_.size());
    const double dn = static_cast<double>(n_);
    for (std::size_t r = 0; r < row_cube_.size(); ++r) {
        const int cube = row_cube_[r], s = row_set_[r];
        double sum = 0.0, sumsq = 0.0;
        for (int cell : cells_in_cube_[cube]) {
            const double p = P[static_cast<std::size_t>(cell) * n_sets + s];
            const double nin = static_cast<double>(count_in_set_[cell][s]);
            const double ntot = static_cast<double>(cells_.cell_totals[cell]);
            sum += nin - p * ntot;
            // moment values are (1-p) with count nin and (-p) with count ntot-nin
            sumsq += nin * (1.0 - p) * (1.0 - p) + (ntot - nin) * p * p;
        }
        MomentRow row;
        row.set = s;
        row.cube = cube;
        row.mbar = sum / dn;
        const double var = sumsq / dn - row.mbar * row.mbar;
        row.sigma = std::sqrt(std::max(var, 0.0));
        if (row.sigma < kSigmaFloor) {
            row.sigma = kSigmaFloor;
            row.sigma_floored = true;
        }
        table.rows[r] = row;
    }
    return table;
}

MomentTable sample_moments(const Dataset& data, const InstrumentCells& instruments,
                           const TestSetCollection& collection,
                           const std::function<double(int cell, int set)>& model_prob) {
    MomentMachine machine(data, instruments, collection);
    std::vector<double> P(static_cast<std::size_t>(machine.n_cells()) * machine.n_sets());
    for (int c = 0; c < machine.n_cells(); ++c)
        for (int s = 0; s < machine.n_sets(); ++s)
            P[static_cast<std::size_t>(c) * machine.n_sets() + s] = model_prob(c, s);
    return machine.moments(P);
}

}  // namespace csb
