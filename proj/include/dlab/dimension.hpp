#pragma once

// Discrete s-energy, weighted maximal integrals, divergence-set probes and
// box counting, together with the dimension exponents they are compared to.

#include <dlab/core.hpp>
#include <dlab/maximal.hpp>
#include <dlab/propagator.hpp>
#include <dlab/regression.hpp>
#include <dlab/sharpness.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace dlab {

struct EnergyResult {
    double value = 0.0;
    bool infinite = false;  ///< coincident atoms, or a single atom
};

/// sum_{i != j} w_i w_j |x_i - x_j|^{-s}.
inline EnergyResult energy(const DiscreteMeasure& mu, double s) {
    mu.validate();
    require(std::isfinite(s) && s > 0.0, "energy: s must be positive");
    EnergyResult r;
    const std::size_t n = mu.atoms.size();
    if (n == 1) {
        r.infinite = true;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    std::vector<double> rows(n, 0.0);
    std::vector<char> coincide(n, 0);
    parallel_for(n, [&](std::size_t i) {
        std::vector<double> terms;
        terms.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(mu.atoms[i].x - mu.atoms[j].x);
            if (d == 0.0) {
                coincide[i] = 1;
                return;
            }
            terms.push_back(mu.atoms[j].w * std::pow(d, -s));
        }
        rows[i] = mu.atoms[i].w * pairwise_sum(terms);
    });
    if (std::any_of(coincide.begin(), coincide.end(), [](char c) { return c != 0; })) {
        r.infinite = true;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    r.value = pairwise_sum(rows);
    return r;
}

/// n atoms of mass 1/n drawn uniformly from [0,1) with a fixed seed.
inline DiscreteMeasure uniform_random_measure(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "uniform_random_measure: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DiscreteMeasure mu;
    mu.atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) mu.atoms.push_back({u(rng), 1.0 / static_cast<double>(n)});
    return mu;
}

/// Left endpoints of the 2^depth intervals of a symmetric Cantor construction
/// on [0,1) keeping two subintervals of relative length `ratio` each step.
inline std::vector<double> cantor_points(int depth, double ratio = 1.0 / 3.0) {
    require(depth >= 0 && depth <= 24, "cantor_points: depth must lie in [0,24]");
    require(ratio > 0.0 && ratio < 0.5, "cantor_points: ratio must lie in (0,1/2)");
    std::vector<double> pts{0.0};
    double len = 1.0;
    for (int k = 0; k < depth; ++k) {
        std::vector<double> next;
        next.reserve(2 * pts.size());
        const double child = len * ratio;
        for (double p : pts) {
            next.push_back(p);
            next.push_back(p + len - child);
        }
        pts = std::move(next);
        len = ratio * len;
    }
    return pts;
}

/// Equal-mass atoms at the centres of the depth-level Cantor intervals;
/// dimension log 2 / log(1/ratio).
inline DiscreteMeasure cantor_measure(int depth, double ratio = 1.0 / 3.0) {
    const auto pts = cantor_points(depth, ratio);
    const double half = 0.5 * std::pow(ratio, depth);
    DiscreteMeasure mu;
    for (double p : pts) mu.atoms.push_back({p + half, 1.0 / static_cast<double>(pts.size())});
    return mu;
}

/// Exponent of I_{.}(mu)^{1/2} in the weighted maximal estimate.
///   a != 1, gamma <= 1, 0 < s < 1/2  or  gamma > 1, 1/4 <= s < 1/2 : 1 - 2s
///   0 < a < 1, gamma > 1, (a/4)(1-1/gamma) < s < 1/4                : sigma(a, gamma, s)
///   a > 1, 1 < gamma < a/(a-1), same s range                         : sigma(a, gamma, s)
///   a = 1, (1/2)(1-1/gamma)_+ < s < 1/2                              : max{1-2s, gamma(1-2s)}
inline double energy_exponent(double a, double gamma, double s, bool closed_upper = false) {
    require(a > 0.0 && gamma > 0.0, "energy_exponent: a, gamma must be positive");
    const bool below_half = closed_upper ? s <= 0.5 : s < 0.5;
    const double low = 0.25 * a * (1.0 - 1.0 / gamma);
    auto sigma = [&] { return 1.0 - 2.0 * s + a * (4.0 * s - 1.0) * (gamma - 1.0) / (2.0 * ((a - 1.0) * gamma - a)); };
    if (a != 1.0) {
        if (gamma <= 1.0 && s > 0.0 && below_half) return 1.0 - 2.0 * s;
        if (gamma > 1.0 && s >= 0.25 && below_half) return 1.0 - 2.0 * s;
        if (a < 1.0 && gamma > 1.0 && s > low && s < 0.25) return sigma();
        if (a > 1.0 && gamma > 1.0 && gamma < a / (a - 1.0) && s > low && s < 0.25) return sigma();
    } else {
        const double lo = 0.5 * std::max(0.0, 1.0 - 1.0 / gamma);
        if (s > lo && below_half) return std::max(1.0 - 2.0 * s, gamma * (1.0 - 2.0 * s));
    }
    throw unsupported_regime("no stated exponent for (a, gamma, s) = (" + std::to_string(a) + ", " +
                             std::to_string(gamma) + ", " + std::to_string(s) + ")");
}

/// Upper bound for the Hausdorff dimension of the divergence set, clamped to [0,1].
inline double dim_bound_exponent(double a, double gamma, double s) {
    return std::clamp(energy_exponent(a, gamma, s, true), 0.0, 1.0);
}

namespace detail {
inline double interpolate(const GridFunction& g, double x) {
    const double u = (x - g.grid.x0) / g.grid.dx;
    require(u >= 0.0 && u <= static_cast<double>(g.size() - 1), "interpolate: point outside grid");
    const auto j = std::min(static_cast<std::size_t>(u), g.size() - 2);
    const double th = u - static_cast<double>(j);
    return (1.0 - th) * g.values[j].real() + th * g.values[j + 1].real();
}
}  // namespace detail

/// sum_i w_i P*f(x_i), P*f linearly interpolated from the gridded maximal function.
inline double weighted_maximal_integral(const SpectrumFunction& fhat, double a, double gamma, const TimeGrid& tg,
                                        const DiscreteMeasure& mu, const GridSpec& grid) {
    mu.validate_in_unit_ball();
    const auto pm = maximal_function(fhat, a, gamma, tg, grid);
    std::vector<double> terms;
    for (const auto& at : mu.atoms) terms.push_back(at.w * detail::interpolate(pm.value, at.x));
    return pairwise_sum(terms);
}

/// Same integral with P*f evaluated at each atom by direct summation.
inline double weighted_maximal_integral_direct(const SpectrumFunction& fhat, double a, double gamma,
                                               const TimeGrid& tg, const DiscreteMeasure& mu) {
    mu.validate_in_unit_ball();
    std::vector<double> terms(mu.atoms.size());
    parallel_for(mu.atoms.size(),
                 [&](std::size_t i) { terms[i] = mu.atoms[i].w * maximal_at(fhat, a, gamma, tg, mu.atoms[i].x); });
    return pairwise_sum(terms);
}

/// integral / (I_sigma(mu)^{1/2} ||f||_{H^s}) with sigma = energy_exponent(a, gamma, s).
inline double weighted_maximal_ratio(double integral, const SpectrumFunction& fhat, double a, double gamma, double s,
                                     const DiscreteMeasure& mu) {
    const double sig = energy_exponent(a, gamma, s);
    const auto I = energy(mu, sig);
    if (I.infinite) return 0.0;
    const double hs = sobolev_norm(fhat, s);
    require(hs > 0.0, "weighted_maximal_ratio: f must be nonzero");
    return integral / (std::sqrt(I.value) * hs);
}

struct DivergenceProbe {
    std::vector<double> points;  ///< grid points with max_t |P^t f - f| > lambda
    double hs_norm = 0.0;
    double max_discrepancy = 0.0;
};

/// {x_j : max over tg_small of |P^t f(x_j) - f(x_j)| > lambda}, an outer
/// approximation of the divergence set at resolution (dx, max tg_small).
inline DivergenceProbe divergence_probe(const SpectrumFunction& fhat, double a, double gamma, double s, double lambda,
                                        const TimeGrid& tg_small, const GridSpec& grid) {
    require(lambda > 0.0, "divergence_probe: lambda must be positive");
    tg_small.validate();
    const auto f = inverse_transform(fhat, grid);
    std::vector<double> disc(grid.n, 0.0);
    for (double t : tg_small.samples) {
        const auto u = propagate(fhat, {a, gamma, t}, grid);
        for (std::size_t j = 0; j < grid.n; ++j) disc[j] = std::max(disc[j], std::abs(u.values[j] - f.values[j]));
    }
    DivergenceProbe p;
    p.hs_norm = sobolev_norm(fhat, s);
    for (std::size_t j = 0; j < grid.n; ++j) {
        p.max_discrepancy = std::max(p.max_discrepancy, disc[j]);
        if (disc[j] > lambda) p.points.push_back(grid.x(j));
    }
    return p;
}

struct BoxDimension {
    double value = 0.0;
    bool defined = false;
    LineFit fit;
    std::vector<double> counts;
};

/// Least-squares slope of log N(delta) against log(1/delta), N(delta) the
/// number of occupied boxes [k delta, (k+1) delta).
inline BoxDimension box_dimension(const std::vector<double>& points, const std::vector<double>& scales) {
    require(scales.size() >= 2, "box_dimension: need at least two scales");
    BoxDimension r;
    if (points.empty()) return r;
    std::vector<double> lx, ly;
    for (double d : scales) {
        require(d > 0.0, "box_dimension: scales must be positive");
        std::set<long long> boxes;
        for (double x : points) boxes.insert(static_cast<long long>(std::floor(x / d)));
        r.counts.push_back(static_cast<double>(boxes.size()));
        lx.push_back(std::log(1.0 / d));
        ly.push_back(std::log(static_cast<double>(boxes.size())));
    }
    r.fit = fit_line(lx, ly);
    r.value = r.fit.slope;
    r.defined = true;
    return r;
}

/// delta = 2^{-k}, k = k_min..k_max.
inline std::vector<double> dyadic_scales(int k_min, int k_max) {
    require(k_max > k_min, "dyadic_scales: need k_max > k_min");
    std::vector<double> s;
    for (int k = k_min; k <= k_max; ++k) s.push_back(std::ldexp(1.0, -k));
    return s;
}

/// Knapp-type family: 2^m translated copies of c f_nu placed at the left
/// endpoints of a depth-m Cantor construction on [0, span) whose finest
/// intervals have the designated length of f_nu. Each copy has P* above
/// roughly lambda on its designated interval, so the divergence probe sees a
/// Cantor-like set of dimension m log 2 / log(span / designated length).
struct KnappFamily {
    SpectrumFunction fhat;
    std::vector<double> offsets;
    double amplitude = 0.0;  ///< c
    double designated_length = 0.0;
    double nominal_dimension = 0.0;
};

inline KnappFamily knapp_family(double nu, double a, double gamma, int m, double lambda, double span, double period,
                                double oversample = 2.0) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    require(m >= 1 && m <= 20, "knapp_family: m must lie in [1,20]");
    require(span > 0.0 && span < 0.5 * period, "knapp_family: span must fit in half a period");
    const double L = p.designated_length();
    require(L < span, "knapp_family: designated interval longer than span");
    const double ratio = std::pow(L / span, 1.0 / m);
    require(ratio < 0.5, "knapp_family: too many levels for the available scale range");
    KnappFamily k;
    for (double q : cantor_points(m, ratio)) k.offsets.push_back(q * span);
    k.designated_length = L;
    k.nominal_dimension = std::log(2.0) / std::log(1.0 / ratio);
    // P*(c f_nu) >= 0.5 c R on the designated interval (see the lower-bound scan), so c = 2.5 lambda / R.
    k.amplitude = 2.5 * lambda / p.R();
    const double cells = 16.0 * period / L;
    oversample = std::max(oversample, cells * (2.0 * pi / period) / (2.0 * p.half_support()));
    auto base = build_f_nu(nu, a, gamma, period, oversample);
    std::vector<cplx> v(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double xi = base.xi(i);
        cplx phase_sum = 0.0;
        for (double x0 : k.offsets) phase_sum += std::polar(1.0, -x0 * xi);
        v[i] = k.amplitude * base.values[i] * phase_sum;
    }
    k.fhat = SpectrumFunction(base.grid, std::move(v));
    return k;
}

struct KnappProbe {
    int m = 0;
    double hs_norm = 0.0;
    double nominal_dimension = 0.0;
    std::size_t points = 0;
    BoxDimension box;
};

/// Divergence probe of the deepest Knapp family with ||f||_{H^s} <= 1. The
/// time grid is geometric (K levels) plus the designated times of f_nu; the
/// probe points in [0, span) are rescaled to [0, 1) and box-counted down to
/// the designated length.
inline KnappProbe knapp_divergence_probe(double nu, double a, double gamma, double s, double lambda = 1.0,
                                         double span = 0.5, double period = 4.0, int K = 6) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    std::optional<KnappFamily> fam;
    KnappProbe out;
    for (int m = 1; m <= 20; ++m) {
        KnappFamily k;
        try {
            k = knapp_family(nu, a, gamma, m, lambda, span, period);
        } catch (const invalid_argument&) {
            break;  // scale range exhausted
        }
        const double hs = sobolev_norm(k.fhat, s);
        if (hs > 1.0) break;
        out.m = m;
        out.hs_norm = hs;
        out.nominal_dimension = k.nominal_dimension;
        fam = std::move(k);
    }
    if (!fam) throw resolution_failure("knapp_divergence_probe: every family member exceeds unit H^s norm");
    const TimeGrid tg = f_nu_time_grid(p, designated_points(p, 32), K);
    const auto probe = divergence_probe(fam->fhat, a, gamma, s, lambda, tg, dual_grid(fam->fhat.grid));
    std::vector<double> pts;
    for (double x : probe.points)
        if (x >= 0.0 && x < span) pts.push_back(x / span);
    out.points = pts.size();
    const int k_max = static_cast<int>(std::floor(std::log2(span / fam->designated_length)));
    out.box = box_dimension(pts, dyadic_scales(1, k_max));
    return out;
}

}  // namespace dlab
