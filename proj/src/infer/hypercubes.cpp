#include "csb/hypercubes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csb {

namespace {

std::vector<double> octile_edges(std::vector<double> v, int bins) {
    std::sort(v.begin(), v.end());
    std::vector<double> edges;
    const std::size_t n = v.size();
    for (int k = 1; k < bins; ++k) {
        // edge at the k/bins order statistic
        const std::size_t idx = std::min(n - 1, static_cast<std::size_t>(std::ceil(
                                                    static_cast<double>(n) * k / bins)) -
                                                    1);
        edges.push_back(v[idx]);
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

int bin_of(double x, const std::vector<double>& edges) {
    int b = 0;
    for (double e : edges) {
        if (x <= e) return b;
        ++b;
    }
    return b;
}

}  // namespace

int InstrumentCells::quantile_cube_of(double mu, double pbar) const {
    if (cubes.size() == 1) return 0;  // all-data cube only
    const double t0 = transform[0][0] * mu + transform[0][1] * pbar;
    const double t1 = transform[1][1] * pbar;
    for (std::size_t i = 0; i + 1 < cubes.size(); ++i) {
        const Cube& c = cubes[i];
        if (t0 > c.lo0 && t0 <= c.hi0 && t1 > c.lo1 && t1 <= c.hi1) return static_cast<int>(i);
    }
    return static_cast<int>(cubes.size()) - 2;  // numerically outermost: clamp to a box
}

InstrumentCells build_hypercubes(const std::vector<std::pair<double, double>>& data,
                                 int axis_quantile_count) {
    const std::size_t n = data.size();
    if (axis_quantile_count < 1) throw std::invalid_argument("build_hypercubes: bins must be >= 1");
    if (n < static_cast<std::size_t>(axis_quantile_count) * axis_quantile_count)
        throw std::invalid_argument("build_hypercubes: sample smaller than bins^2");

    double m0 = 0.0, m1 = 0.0;
    for (auto& [a, b] : data) {
        m0 += a;
        m1 += b;
    }
    m0 /= static_cast<double>(n);
    m1 /= static_cast<double>(n);
    double s00 = 0.0, s01 = 0.0, s11 = 0.0;
    for (auto& [a, b] : data) {
        s00 += (a - m0) * (a - m0);
        s01 += (a - m0) * (b - m1);
        s11 += (b - m1) * (b - m1);
    }
    s00 /= static_cast<double>(n);
    s01 /= static_cast<double>(n);
    s11 /= static_cast<double>(n);

    const double scale0 = std::max(s00, 1e-300), scale1 = std::max(s11, 1e-300);
    const bool degenerate0 = s00 <= 1e-14 * (1.0 + m0 * m0);
    const bool degenerate1 = s11 <= 1e-14 * (1.0 + m1 * m1);
    if (degenerate0 && degenerate1)
        throw std::invalid_argument("build_hypercubes: both covariates constant");
    if (!degenerate0 && !degenerate1) {
        const double corr = s01 / std::sqrt(scale0 * scale1);
        if (std::abs(corr) > 1.0 - 1e-10)
            throw std::invalid_argument("build_hypercubes: collinear covariates");
    }

    InstrumentCells out;
    // upper-triangular T with T Sigma T' = I; degenerate axes map to 0
    if (degenerate0) {
        out.transform = {{{0.0, 0.0}, {0.0, 1.0 / std::sqrt(scale1)}}};
    } else if (degenerate1) {
        out.transform = {{{1.0 / std::sqrt(scale0), 0.0}, {0.0, 0.0}}};
    } else {
        const double c = 1.0 / std::sqrt(s11);
        const double a = 1.0 / std::sqrt(s00 - s01 * s01 / s11);
        const double b = -a * s01 / s11;
        out.transform = {{{a, b}, {0.0, c}}};
    }

    std::vector<double> t0(n), t1(n);
    for (std::size_t i = 0; i < n; ++i) {
        t0[i] = out.transform[0][0] * data[i].first + out.transform[0][1] * data[i].second;
        t1[i] = out.transform[1][1] * data[i].second;
    }
    const std::vector<double> e0 = degenerate0 ? std::vector<double>{} : octile_edges(t0, axis_quantile_count);
    const std::vector<double> e1 = degenerate1 ? std::vector<double>{} : octile_edges(t1, axis_quantile_count);

    const double inf = std::numeric_limits<double>::infinity();
    auto edge_lo = [&](const std::vector<double>& e, int b) { return b == 0 ? -inf : e[b - 1]; };
    auto edge_hi = [&](const std::vector<double>& e, int b) {
        return b == static_cast<int>(e.size()) ? inf : e[b];
    };
    const int b0 = static_cast<int>(e0.size()) + 1, b1 = static_cast<int>(e1.size()) + 1;
    for (int i = 0; i < b0; ++i)
        for (int j = 0; j < b1; ++j)
            out.cubes.push_back({edge_lo(e0, i), edge_hi(e0, i), edge_lo(e1, j), edge_hi(e1, j)});
    // drop a lone quantile box identical to the all-data cube
    if (out.cubes.size() == 1) out.cubes.clear();
    out.cubes.push_back({-inf, inf, -inf, inf});
    out.J = static_cast<int>(out.cubes.size());

    out.cube_of_obs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int bi = degenerate0 ? 0 : bin_of(t0[i], e0);
        const int bj = degenerate1 ? 0 : bin_of(t1[i], e1);
        out.cube_of_obs[i] = out.cubes.size() == 1 ? 0 : bi * b1 + bj;
    }
    return out;
}

}  // namespace csb
