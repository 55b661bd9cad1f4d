#pragma once

// Time-gridded maximal operator P*, the discrete Hardy-Littlewood maximal
// function, super-level sets and the strong-type ratio scan.

#include <dlab/core.hpp>
#include <dlab/propagator.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace dlab {

/// Strictly increasing sample times in (0,1) replacing sup_{0<t<1}.
struct TimeGrid {
    std::vector<double> samples;

    void validate() const {
        require(!samples.empty(), "TimeGrid: empty");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            require(samples[i] > 0.0 && samples[i] < 1.0, "TimeGrid: samples must lie in (0,1)");
            if (i > 0) require(samples[i] > samples[i - 1], "TimeGrid: samples must be strictly increasing");
        }
    }

    std::size_t size() const { return samples.size(); }

    /// t_k = 2^{-k}, k = 1..K.
    static TimeGrid geometric(int K) {
        require(K >= 1, "TimeGrid::geometric: K must be >= 1");
        TimeGrid g;
        for (int k = K; k >= 1; --k) g.samples.push_back(std::ldexp(1.0, -k));
        return g;
    }

    /// Sorted union; values outside (0,1) are rejected.
    static TimeGrid from(std::vector<double> ts) {
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        TimeGrid g{std::move(ts)};
        g.validate();
        return g;
    }

    static TimeGrid merge(const TimeGrid& a, const TimeGrid& b) {
        std::vector<double> all = a.samples;
        all.insert(all.end(), b.samples.begin(), b.samples.end());
        return from(std::move(all));
    }
};

struct MaximalResult {
    GridFunction value;           ///< max_t |P^t f| (real, stored as complex with zero imaginary part)
    std::vector<double> argmax_t;  ///< maximising time per grid point; smallest such t on ties
};

/// max over tg of |P^t_{a,gamma} f| on `grid`.
inline MaximalResult maximal_function(const SpectrumFunction& fhat, double a, double gamma, const TimeGrid& tg,
                                      const GridSpec& grid) {
    tg.validate();
    grid.validate();
    std::vector<double> best(grid.n, -1.0), arg(grid.n, tg.samples.front());
    for (double t : tg.samples) {
        const auto u = propagate(fhat, {a, gamma, t}, grid);
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double m = std::abs(u.values[j]);
            if (m > best[j]) {
                best[j] = m;
                arg[j] = t;
            }
        }
    }
    std::vector<cplx> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = best[j];
    return {GridFunction(grid, std::move(v)), std::move(arg)};
}

/// max over tg of |P^t f(x)| at a single point, by direct summation.
inline double maximal_at(const SpectrumFunction& fhat, double a, double gamma, const TimeGrid& tg, double x,
                         double* argmax = nullptr) {
    tg.validate();
    fhat.validate();
    std::vector<double> absxi(fhat.size());
    for (std::size_t k = 0; k < fhat.size(); ++k) absxi[k] = abs_pow(fhat.xi(k), a);
    double best = -1.0, arg = tg.samples.front();
    std::vector<cplx> w(fhat.size());
    for (double t : tg.samples) {
        const double damp = std::pow(t, gamma);
        for (std::size_t k = 0; k < fhat.size(); ++k)
            w[k] = fhat.values[k] * std::polar(std::exp(-damp * absxi[k]), t * absxi[k]);
        const double m = std::abs(inverse_transform_at(SpectrumFunction(fhat.grid, w), x));
        if (m > best) {
            best = m;
            arg = t;
        }
    }
    if (argmax) *argmax = arg;
    return best;
}

/// Centred discrete Hardy-Littlewood maximal function: for every radius r
/// (in grid cells) the mean of |f| over the 2r+1 cells around x_j, with
/// samples outside the grid counted as zero.
inline GridFunction hardy_littlewood(const GridFunction& f) {
    f.validate();
    const std::size_t n = f.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + std::abs(f.values[j]);
    std::vector<cplx> out(n);
    parallel_for(n, [&](std::size_t j) {
        double best = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t lo = j >= r ? j - r : 0;
            const std::size_t hi = std::min(n, j + r + 1);
            best = std::max(best, (prefix[hi] - prefix[lo]) / static_cast<double>(2 * r + 1));
            if (lo == 0 && hi == n) break;  // wider windows only add zeros
        }
        out[j] = best;
    });
    return {f.grid, std::move(out)};
}

/// sup over grid points and t of (|e^{-t(-Delta)^{a/2}} f| [+ |t(-Delta)^{a/2} e^{...} f|]) / Mf.
inline double domination_check(const SpectrumFunction& fhat, double a, const std::vector<double>& t_list,
                               const GridSpec& grid, bool include_derivative = false) {
    require(!t_list.empty(), "domination_check: empty time list");
    const auto f = inverse_transform(fhat, grid);
    const auto Mf = hardy_littlewood(f);
    double sup = 0.0;
    for (double t : t_list) {
        const auto u = dissipative_propagate(fhat, t, a, grid);
        GridFunction du;
        if (include_derivative) du = dissipative_derivative_propagate(fhat, t, a, grid);
        for (std::size_t j = 0; j < grid.n; ++j) {
            double num = std::abs(u.values[j]);
            if (include_derivative) num += std::abs(du.values[j]);
            const double den = std::max(Mf.values[j].real(), 1e-300);
            if (num == 0.0) continue;
            sup = std::max(sup, num / den);
        }
    }
    return sup;
}

/// dx * #{j : |g_j| > lambda}.
inline double level_set_measure(const GridFunction& g, double lambda) {
    require(lambda > 0.0, "level_set_measure: lambda must be positive");
    std::size_t count = 0;
    for (const auto& v : g.values)
        if (std::abs(v) > lambda) ++count;
    return static_cast<double>(count) * g.grid.dx;
}

/// Same, restricted to grid points in [lo, hi].
inline double level_set_measure(const GridFunction& g, double lambda, double lo, double hi) {
    require(lambda > 0.0, "level_set_measure: lambda must be positive");
    std::size_t count = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.x(j);
        if (x >= lo && x <= hi && std::abs(g.values[j]) > lambda) ++count;
    }
    return static_cast<double>(count) * g.grid.dx;
}

enum class ScanDomain { local_unit_ball, global };

struct ScanMember {
    SpectrumFunction fhat;  ///< sampled so that its dual grid is the spatial grid of the scan
    TimeGrid tg;
};

struct StrongRatioRow {
    double maximal_l2 = 0.0;  ///< ||P* f||_{L^2(domain)}
    double hs_norm = 0.0;     ///< ||f||_{H^s}
    double ratio = 0.0;
};

/// ||P* f||_{L^2(domain)} / ||f||_{H^s} for each member. Each member is
/// evaluated on the spatial grid dual to its own spectrum (one FFT per time).
inline std::vector<StrongRatioRow> strong_ratio_scan(const std::vector<ScanMember>& family, double a, double gamma,
                                                     double s, ScanDomain domain) {
    std::vector<StrongRatioRow> rows;
    rows.reserve(family.size());
    for (const auto& m : family) {
        const GridSpec grid = dual_grid(m.fhat.grid);
        if (domain == ScanDomain::local_unit_ball)
            require(grid.x0 < -1.0 && grid.x(grid.n - 1) > 1.0, "strong_ratio_scan: spatial period must cover B(0,1)");
        const auto pm = maximal_function(m.fhat, a, gamma, m.tg, grid);
        std::vector<double> sq;
        sq.reserve(grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) {
            if (domain == ScanDomain::local_unit_ball && std::abs(grid.x(j)) >= 1.0) continue;
            sq.push_back(std::norm(pm.value.values[j]));
        }
        StrongRatioRow r;
        r.maximal_l2 = std::sqrt(pairwise_sum(sq) * grid.dx);
        r.hs_norm = sobolev_norm(m.fhat, s);
        r.ratio = r.hs_norm > 0.0 ? r.maximal_l2 / r.hs_norm : 0.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace dlab
