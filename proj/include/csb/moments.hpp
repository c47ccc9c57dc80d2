#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "csb/dataset.hpp"
#include "csb/hypercubes.hpp"
#include "csb/test_sets.hpp"

namespace csb {

struct MomentRow {
    int set = 0;   // index into the test-set collection
    int cube = 0;  // instrument cube (J-1 = all data)
    double mbar = 0.0;
    double sigma = 0.0;
    bool sigma_floored = false;  // sigma was below the 1e-10 floor (empty row)
};

struct MomentTable {
    std::vector<MomentRow> rows;
    long long n = 0;
};

// n * max over rows of max(mbar/sigma, 0)^2.
double ks_statistic(const MomentTable& table);

// Model-implied containment probabilities, flattened [cell * n_sets + set].
using ModelProbFn = std::function<void(std::vector<double>& probs)>;

// Sufficient statistics connecting a dataset to the moment rows: observations
// grouped into distinct covariate cells, each cell mapped to one instrument
// cube. Model probabilities are evaluated once per distinct cell.
class MomentMachine {
  public:
    MomentMachine(const Dataset& data, const InstrumentCells& instruments,
                  TestSetCollection collection);

    int n_cells() const { return cells_.n_cells(); }
    int n_sets() const { return static_cast<int>(collection_.sets.size()); }
    int n_rows() const { return static_cast<int>(row_cube_.size()) ; }
    long long n() const { return n_; }
    const CellIndex& cells() const { return cells_; }
    const TestSetCollection& collection() const { return collection_; }
    const std::vector<int>& cube_of_cell() const { return cube_of_cell_; }

    // model_probs flattened [cell * n_sets + set]
    MomentTable moments(const std::vector<double>& model_probs) const;

    struct BootstrapCounts {
        int B = 0;
        // per replicate: counts per (cell, set) of resampled choices landing in
        // the set, and per-cell totals
        std::vector<std::vector<std::int64_t>> in_set;  // [b][cell * n_sets + set]
        std::vector<std::vector<std::int64_t>> totals;  // [b][cell]
    };

    // Nonparametric bootstrap at the observation level, deterministic per
    // (seed, replicate); independent of theta so it is built once per dataset.
    BootstrapCounts make_bootstrap(int B, std::uint64_t seed, bool parallel = true) const;

    struct CriticalValues {
        double as_critical = 0.0;    // for T_n <= c + xi (quantile at 1-alpha+xi)
        double hard_critical = 0.0;  // for sqrt(n) mbar/sigma <= c (quantile at 1-alpha)
    };

    // GMS bootstrap critical values: tau_n = sqrt(0.3 ln n),
    // beta_n = sqrt(0.4 ln n / ln ln n); AS statistic uses the -beta_n shift,
    // the hard-threshold variant drops deselected rows entirely.
    CriticalValues bootstrap_critical(const std::vector<double>& model_probs,
                                      const MomentTable& table, const BootstrapCounts& boot,
                                      double alpha, double xi = 1e-6) const;

  private:
    CellIndex cells_;
    TestSetCollection collection_;
    std::vector<int> cube_of_cell_;
    int J_ = 0;
    long long n_ = 0;
    std::vector<std::vector<int>> cells_in_cube_;          // per cube
    std::vector<std::vector<std::int64_t>> count_in_set_;  // [cell][set]
    std::vector<int> row_cube_, row_set_;                  // flattened row layout
};

// Spec-level convenience: moments for one theta evaluated through a
// containment probability function P(cell, set).
MomentTable sample_moments(const Dataset& data, const InstrumentCells& instruments,
                           const TestSetCollection& collection,
                           const std::function<double(int cell, int set)>& model_prob);

double gms_tau(long long n);
double gms_beta(long long n);

}  // namespace csb
