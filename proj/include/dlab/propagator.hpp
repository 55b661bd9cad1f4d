#pragma once

// The complex-time fractional propagator P^t_{a,gamma} and its special cases,
// all realised as Fourier multipliers under the library convention
// f(x) = \int fhat(xi) e^{i x xi} dxi.

#include <dlab/core.hpp>
#include <dlab/cutoffs.hpp>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace dlab {

/// |xi|^a, even in xi and real.
inline double abs_pow(double xi, double a) { return xi == 0.0 ? 0.0 : std::pow(std::abs(xi), a); }

/// exp(i t |xi|^a - t^gamma |xi|^a).
inline cplx multiplier(double xi, const EvolutionParams& p) {
    const double r = abs_pow(xi, p.a);
    return std::polar(std::exp(-std::pow(p.t, p.gamma) * r), p.t * r);
}

/// Non-fatal findings produced while propagating.
struct Diagnostics {
    std::vector<std::string> warnings;
};

namespace detail {

/// Warns when |fhat * m| at a window edge exceeds `rel` of its peak, i.e. the
/// sampled window truncates spectral content that the multiplier has not damped.
template <class M>
void check_band_limit(const SpectrumFunction& fhat, M&& m, Diagnostics* diag, double rel = 1e-12) {
    if (diag == nullptr || fhat.size() == 0) return;
    double peak = 0.0;
    for (std::size_t k = 0; k < fhat.size(); ++k) peak = std::max(peak, std::abs(fhat.values[k] * m(fhat.xi(k))));
    const std::size_t last = fhat.size() - 1;
    const double edge = std::max(std::abs(fhat.values[0] * m(fhat.xi(0))), std::abs(fhat.values[last] * m(fhat.xi(last))));
    if (peak > 0.0 && edge > rel * peak)
        diag->warnings.push_back("band-limit: spectrum at window edge is " + std::to_string(edge / peak) +
                                 " of peak after damping");
}

template <class M>
GridFunction apply_multiplier(const SpectrumFunction& fhat, M&& m, const GridSpec& grid, Diagnostics* diag) {
    fhat.validate();
    grid.validate();
    check_band_limit(fhat, m, diag);
    std::vector<cplx> v(fhat.size());
    for (std::size_t k = 0; k < fhat.size(); ++k) v[k] = fhat.values[k] * m(fhat.xi(k));
    return inverse_transform(SpectrumFunction(fhat.grid, std::move(v)), grid);
}

}  // namespace detail

/// P^t_{a,gamma} f sampled on `grid`.
inline GridFunction propagate(const SpectrumFunction& fhat, const EvolutionParams& p, const GridSpec& grid,
                              Diagnostics* diag = nullptr) {
    p.validate();
    return detail::apply_multiplier(fhat, [&](double xi) { return multiplier(xi, p); }, grid, diag);
}

/// Variable-time truncated propagator
///   mu(x/N) \int fhat(xi) e^{i t(x)|xi|^a} e^{-t(x)^gamma |xi|^a} e^{i x xi} mu(xi/N) dxi
/// with one time per grid point (times.size() == grid.n). Direct quadrature.
inline GridFunction propagate_truncated(const SpectrumFunction& fhat, double a, double gamma, double N,
                                        std::span<const double> times, const CutoffFamily& cutoffs,
                                        const GridSpec& grid) {
    fhat.validate();
    grid.validate();
    require(a > 0.0 && gamma > 0.0, "propagate_truncated: a and gamma must be positive");
    require(N >= 1.0, "propagate_truncated: N must be >= 1");
    require(times.size() == grid.n, "propagate_truncated: need one time per grid point");
    for (double t : times) require(t > 0.0 && t < 1.0, "propagate_truncated: t(x) must lie in (0,1)");

    std::vector<double> absxi(fhat.size()), freq_cut(fhat.size());
    for (std::size_t k = 0; k < fhat.size(); ++k) {
        absxi[k] = abs_pow(fhat.xi(k), a);
        freq_cut[k] = cutoffs.mu(fhat.xi(k) / N);
    }
    std::vector<cplx> out(grid.n);
    parallel_for(grid.n, [&](std::size_t j) {
        const double x = grid.x(j), t = times[j];
        const double space_cut = cutoffs.mu(x / N);
        if (space_cut == 0.0) return;
        const double damp = std::pow(t, gamma);
        std::vector<cplx> terms(fhat.size());
        for (std::size_t k = 0; k < fhat.size(); ++k) {
            if (freq_cut[k] == 0.0) continue;
            terms[k] = fhat.values[k] * freq_cut[k] * std::polar(std::exp(-damp * absxi[k]), t * absxi[k] + x * fhat.xi(k));
        }
        out[j] = space_cut * pairwise_sum(terms) * fhat.grid.dxi;
    });
    return {grid, std::move(out)};
}

/// e^{-t(-Delta)^{a/2}} f, t > 0.
inline GridFunction dissipative_propagate(const SpectrumFunction& fhat, double t, double a, const GridSpec& grid,
                                          Diagnostics* diag = nullptr) {
    require(std::isfinite(t) && t > 0.0, "dissipative_propagate: t must be positive");
    require(a > 0.0, "dissipative_propagate: a must be positive");
    return detail::apply_multiplier(fhat, [&](double xi) { return cplx(std::exp(-t * abs_pow(xi, a))); }, grid, diag);
}

/// t(-Delta)^{a/2} e^{-t(-Delta)^{a/2}} f, t > 0.
inline GridFunction dissipative_derivative_propagate(const SpectrumFunction& fhat, double t, double a,
                                                     const GridSpec& grid) {
    require(std::isfinite(t) && t > 0.0, "dissipative_derivative_propagate: t must be positive");
    require(a > 0.0, "dissipative_derivative_propagate: a must be positive");
    return detail::apply_multiplier(
        fhat,
        [&](double xi) {
            const double r = t * abs_pow(xi, a);
            return cplx(r * std::exp(-r));
        },
        grid, nullptr);
}

/// Solution of u_t - e^{i theta} u_xx = 0: multiplier exp(-e^{i theta} t xi^2).
inline GridFunction ginzburg_landau_propagate(const SpectrumFunction& fhat, double t, double theta,
                                              const GridSpec& grid, Diagnostics* diag = nullptr) {
    require(std::isfinite(theta) && theta >= -0.5 * pi && theta <= 0.5 * pi,
            "ginzburg_landau_propagate: theta must lie in [-pi/2, pi/2]");
    require(std::isfinite(t) && t > 0.0, "ginzburg_landau_propagate: t must be positive");
    const cplx rot = std::polar(1.0, theta);
    return detail::apply_multiplier(fhat, [&](double xi) { return std::exp(-rot * t * xi * xi); }, grid, diag);
}

}  // namespace dlab
