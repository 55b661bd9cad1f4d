#pragma once

// Grid and spectrum containers, the discrete Fourier pairing, Sobolev norms,
// and discrete measures.
//
// Fourier convention (used everywhere in the library):
//     f(x)    = \int fhat(xi) e^{i x xi} dxi
//     fhat(xi) = (1/2pi) \int f(x) e^{-i x xi} dx
// so Fourier multipliers transcribe as m(xi) with no stray 2pi.

#include <dlab/errors.hpp>
#include <dlab/parallel.hpp>

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Uniform spatial sampling x_j = x0 + j*dx, j = 0..n-1.
struct GridSpec {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double period() const { return static_cast<double>(n) * dx; }

    void validate() const {
        require(n > 0, "GridSpec: empty grid");
        require(std::isfinite(dx) && dx > 0.0, "GridSpec: dx must be positive");
        require(std::isfinite(x0), "GridSpec: x0 must be finite");
    }

    /// n points covering [-half_width, +half_width] with both endpoints included.
    static GridSpec symmetric(double half_width, std::size_t n) {
        require(n >= 2, "GridSpec::symmetric: need at least two points");
        require(half_width > 0.0, "GridSpec::symmetric: half width must be positive");
        return {-half_width, 2.0 * half_width / static_cast<double>(n - 1), n};
    }

    /// n points with spacing dx starting at -n*dx/2 (the FFT-friendly periodic layout).
    static GridSpec periodic(double period, std::size_t n) {
        require(n > 0 && period > 0.0, "GridSpec::periodic: bad arguments");
        const double dx = period / static_cast<double>(n);
        return {-0.5 * period, dx, n};
    }
};

/// Uniform frequency sampling xi_k = xi0 + k*dxi.
struct SpectralGrid {
    double xi0 = 0.0;
    double dxi = 1.0;
    std::size_t n = 0;

    double xi(std::size_t k) const { return xi0 + static_cast<double>(k) * dxi; }

    void validate() const {
        require(n > 0, "SpectralGrid: empty grid");
        require(std::isfinite(dxi) && dxi > 0.0, "SpectralGrid: dxi must be positive");
        require(std::isfinite(xi0), "SpectralGrid: xi0 must be finite");
    }
};

/// The frequency grid that pairs with `grid` under the DFT, centred on xi_center.
inline SpectralGrid dual_spectral_grid(const GridSpec& grid, double xi_center = 0.0) {
    grid.validate();
    const double dxi = 2.0 * pi / grid.period();
    return {xi_center - static_cast<double>(grid.n / 2) * dxi, dxi, grid.n};
}

/// The spatial grid that pairs with `sg`, centred on x = 0.
inline GridSpec dual_grid(const SpectralGrid& sg) {
    sg.validate();
    const double period = 2.0 * pi / sg.dxi;
    const double dx = period / static_cast<double>(sg.n);
    return {-static_cast<double>(sg.n / 2) * dx, dx, sg.n};
}

inline bool transform_compatible(const GridSpec& g, const SpectralGrid& s) {
    if (g.n != s.n) return false;
    const double prod = g.dx * s.dxi * static_cast<double>(g.n);
    return std::abs(prod - 2.0 * pi) <= 1e-12 * 2.0 * pi;
}

struct GridFunction {
    GridSpec grid;
    std::vector<cplx> values;

    GridFunction() = default;
    GridFunction(GridSpec g, std::vector<cplx> v) : grid(g), values(std::move(v)) { validate(); }

    double x(std::size_t j) const { return grid.x(j); }
    std::size_t size() const { return values.size(); }

    void validate() const {
        grid.validate();
        require(values.size() == grid.n, "GridFunction: value count does not match grid");
        for (const auto& v : values)
            require(std::isfinite(v.real()) && std::isfinite(v.imag()), "GridFunction: non-finite value");
    }

    template <class F>
    static GridFunction sample(const GridSpec& g, F&& f) {
        g.validate();
        std::vector<cplx> v(g.n);
        for (std::size_t j = 0; j < g.n; ++j) v[j] = cplx(f(g.x(j)));
        return {g, std::move(v)};
    }
};

struct SpectrumFunction {
    SpectralGrid grid;
    std::vector<cplx> values;

    SpectrumFunction() = default;
    SpectrumFunction(SpectralGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) { validate(); }

    double xi(std::size_t k) const { return grid.xi(k); }
    std::size_t size() const { return values.size(); }

    void validate() const {
        grid.validate();
        require(values.size() == grid.n, "SpectrumFunction: value count does not match grid");
        for (const auto& v : values)
            require(std::isfinite(v.real()) && std::isfinite(v.imag()), "SpectrumFunction: non-finite value");
    }

    template <class F>
    static SpectrumFunction sample(const SpectralGrid& g, F&& f) {
        g.validate();
        std::vector<cplx> v(g.n);
        for (std::size_t k = 0; k < g.n; ++k) v[k] = cplx(f(g.xi(k)));
        return {g, std::move(v)};
    }
};

/// (a, gamma, t) of the complex-time propagator, g(t) = t + i t^gamma.
struct EvolutionParams {
    double a = 1.0;
    double gamma = 1.0;
    double t = 0.5;

    void validate() const {
        require(std::isfinite(a) && a > 0.0, "EvolutionParams: a must be positive");
        require(std::isfinite(gamma) && gamma > 0.0, "EvolutionParams: gamma must be positive");
        require(std::isfinite(t) && t > 0.0 && t < 1.0, "EvolutionParams: t must lie in (0,1)");
    }
};

struct Atom {
    double x = 0.0;
    double w = 0.0;
};

/// Finite positive combination of point masses.
struct DiscreteMeasure {
    std::vector<Atom> atoms;

    void validate() const {
        require(!atoms.empty(), "DiscreteMeasure: no atoms");
        for (const auto& at : atoms) {
            require(std::isfinite(at.x), "DiscreteMeasure: non-finite position");
            require(std::isfinite(at.w) && at.w > 0.0, "DiscreteMeasure: weights must be positive");
        }
    }

    /// Additionally requires every atom in the open unit ball |x| < 1.
    void validate_in_unit_ball() const {
        validate();
        for (const auto& at : atoms) require(std::abs(at.x) < 1.0, "DiscreteMeasure: atom outside B(0,1)");
    }

    double total_mass() const {
        std::vector<double> w;
        w.reserve(atoms.size());
        for (const auto& at : atoms) w.push_back(at.w);
        return pairwise_sum(w);
    }
};

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// In-place unnormalised DFT; sign = FFTW_FORWARD (e^{-2 pi i jk/n}) or FFTW_BACKWARD.
inline void dft_inplace(std::vector<cplx>& data, int sign) {
    static_assert(sizeof(cplx) == sizeof(fftw_complex));
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace detail

/// fhat on the dual frequency grid centred at xi_center (default 0).
inline SpectrumFunction forward_transform(const GridFunction& f, double xi_center = 0.0) {
    require(!f.values.empty(), "forward_transform: empty input");
    f.validate();
    const SpectralGrid sg = dual_spectral_grid(f.grid, xi_center);
    const std::size_t n = f.grid.n;
    std::vector<cplx> buf(n);
    for (std::size_t j = 0; j < n; ++j)
        buf[j] = f.values[j] * std::polar(1.0, -static_cast<double>(j) * f.grid.dx * sg.xi0);
    detail::dft_inplace(buf, FFTW_FORWARD);
    const double scale = f.grid.dx / (2.0 * pi);
    for (std::size_t k = 0; k < n; ++k) buf[k] *= scale * std::polar(1.0, -f.grid.x0 * sg.xi(k));
    return {sg, std::move(buf)};
}

/// Direct O(n_x n_xi) evaluation of \int g(xi) e^{i x xi} dxi as a Riemann sum.
/// Phases are taken relative to the window centre to keep them small.
inline cplx inverse_transform_at(const SpectrumFunction& g, double x) {
    const double xc = g.grid.xi0 + 0.5 * static_cast<double>(g.grid.n - 1) * g.grid.dxi;
    std::vector<cplx> terms(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        terms[k] = g.values[k] * std::polar(1.0, x * (g.xi(k) - xc));
    return pairwise_sum(terms) * g.grid.dxi * std::polar(1.0, x * xc);
}

/// Inverse of forward_transform. Uses the FFT when `grid` is the dual of g's
/// frequency grid, otherwise falls back to direct summation.
inline GridFunction inverse_transform(const SpectrumFunction& g, const GridSpec& grid) {
    require(!g.values.empty(), "inverse_transform: empty input");
    g.validate();
    grid.validate();
    std::vector<cplx> out(grid.n);
    if (transform_compatible(grid, g.grid)) {
        const std::size_t n = grid.n;
        for (std::size_t k = 0; k < n; ++k)
            out[k] = g.values[k] * std::polar(1.0, grid.x0 * static_cast<double>(k) * g.grid.dxi);
        detail::dft_inplace(out, FFTW_BACKWARD);
        for (std::size_t j = 0; j < n; ++j) out[j] *= g.grid.dxi * std::polar(1.0, grid.x(j) * g.grid.xi0);
    } else {
        parallel_for(grid.n, [&](std::size_t j) { out[j] = inverse_transform_at(g, grid.x(j)); });
    }
    return {grid, std::move(out)};
}

/// ( sum (1+xi^2)^s |g|^2 dxi )^{1/2}; values outside the window count as zero.
inline double sobolev_norm(const SpectrumFunction& g, double s) {
    require(std::isfinite(s), "sobolev_norm: s must be finite");
    g.validate();
    std::vector<double> terms(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double xi = g.xi(k);
        terms[k] = std::pow(1.0 + xi * xi, s) * std::norm(g.values[k]);
    }
    return std::sqrt(pairwise_sum(terms) * g.grid.dxi);
}

/// sum |f|^2 dx.
inline double l2_norm_squared(const GridFunction& f) {
    std::vector<double> terms(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) terms[j] = std::norm(f.values[j]);
    return pairwise_sum(terms) * f.grid.dx;
}

inline double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_difference(const GridFunction& f, const GridFunction& g) {
    require(f.size() == g.size(), "max_abs_difference: size mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f.values[j] - g.values[j]));
    return m;
}

}  // namespace dlab
