#pragma once

// Convolution kernels of the dissipative and complex-time semigroups, the
// Bessel-potential kernel, the dyadic pieces Lambda_M of the high-frequency
// oscillatory kernel, and the exponent formulas attached to their bounds.

#include <dlab/core.hpp>
#include <dlab/cutoffs.hpp>
#include <dlab/propagator.hpp>
#include <dlab/quadrature.hpp>
#include <dlab/regression.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace dlab {

namespace detail {

/// \int_0^infty A(xi) e^{i y xi} dxi along the ray xi = r e^{i phi}.
/// A must be analytic in the sector between the real axis and the ray, and
/// the integrand must decay along the ray.
template <class Amp>
cplx ray_fourier(Amp&& amp, double y, double phi, double rel_tol = 1e-13) {
    const cplx dir = std::polar(1.0, phi);
    auto integrand = [&](double r) {
        const cplx z = r * dir;
        return amp(z) * std::exp(cplx(0.0, y) * z) * dir;
    };
    // Walk outward until the integrand is negligible relative to what we have seen.
    double peak = 0.0, r = 1e-6, last = 0.0;
    int after_peak = 0;
    for (int it = 0; it < 400; ++it) {
        const double m = std::abs(integrand(r)) * r;
        if (m > peak) {
            peak = m;
            after_peak = 0;
        } else {
            ++after_peak;
        }
        last = r;
        if (after_peak > 4 && m < 1e-19 * peak) break;
        r *= 1.5;
    }
    if (!(peak > 0.0)) return {0.0, 0.0};
    const auto edges = quad::geometric_breakpoints(last, 80);
    const auto res = quad::adaptive(integrand, edges, 1e-300, rel_tol, 200000);
    if (!res.converged)
        throw numeric_failure("ray_fourier: no convergence (error " + std::to_string(res.error) + ", y=" +
                              std::to_string(y) + ")");
    return res.value;
}

/// Rotation angle for amplitude exp(-c xi^a) paired with e^{i y xi}: turn into
/// the half plane where e^{i y xi} decays while keeping Re(c xi^a) > 0.
inline double sector_angle(double arg_c, double a, double y) {
    if (y == 0.0) return 0.0;
    constexpr double frac = 0.7;
    if (y > 0.0) return frac * std::min(0.5 * pi, (0.5 * pi - arg_c) / a);
    return frac * std::max(-0.5 * pi, (-0.5 * pi - arg_c) / a);
}

/// \int_{-infty}^{infty} |xi|^p exp(-c |xi|^a) e^{i x xi} dxi, Re c > 0.
inline cplx radial_stable_integral(cplx c, double a, double p, double x) {
    const double argc = std::arg(c);
    auto amp = [&](cplx z) { return (p == 0.0 ? cplx(1.0) : std::pow(z, p)) * std::exp(-c * std::pow(z, a)); };
    auto half = [&](double y) { return ray_fourier(amp, y, sector_angle(argc, a, y)); };
    if (x == 0.0) return 2.0 * half(0.0);
    return half(x) + half(-x);
}

}  // namespace detail

/// L(x,t,a) = \int e^{-(1+i) t |xi|^a} e^{i x xi} dxi (no 1/2pi factor).
inline cplx poisson_kernel(double x, double t, double a) {
    require(std::isfinite(t) && t > 0.0, "poisson_kernel: t must be positive");
    require(std::isfinite(a) && a > 0.0, "poisson_kernel: a must be positive");
    require(std::isfinite(x), "poisson_kernel: x must be finite");
    return detail::radial_stable_integral(cplx(t, t), a, 0.0, x);
}

/// The majorant t / (t^{2/a} + x^2)^{(1+a)/2}.
inline double poisson_majorant(double x, double t, double a) {
    return t / std::pow(std::pow(t, 2.0 / a) + x * x, 0.5 * (1.0 + a));
}

/// |L(x,t,a)| divided by the majorant; bounded in (x,t) for each fixed a.
inline double poisson_bound_ratio(double x, double t, double a) {
    return std::abs(poisson_kernel(x, t, a)) / poisson_majorant(x, t, a);
}

/// Convolution kernel of e^{-t(-Delta)^{a/2}}: (1/2pi) \int e^{-t|xi|^a} e^{i x xi} dxi.
inline double fractional_heat_kernel(double x, double t, double a) {
    require(std::isfinite(t) && t > 0.0, "fractional_heat_kernel: t must be positive");
    require(std::isfinite(a) && a > 0.0, "fractional_heat_kernel: a must be positive");
    return detail::radial_stable_integral(cplx(t, 0.0), a, 0.0, x).real() / (2.0 * pi);
}

/// Convolution kernel of t(-Delta)^{a/2} e^{-t(-Delta)^{a/2}}.
inline double fractional_heat_derivative_kernel(double x, double t, double a) {
    require(std::isfinite(t) && t > 0.0, "fractional_heat_derivative_kernel: t must be positive");
    require(std::isfinite(a) && a > 0.0, "fractional_heat_derivative_kernel: a must be positive");
    return t * detail::radial_stable_integral(cplx(t, 0.0), a, a, x).real() / (2.0 * pi);
}

/// (|P| + |P~|) divided by the Poisson-type majorant.
inline double heat_bound_ratio(double x, double t, double a) {
    const double k = std::abs(fractional_heat_kernel(x, t, a)) + std::abs(fractional_heat_derivative_kernel(x, t, a));
    return k / poisson_majorant(x, t, a);
}

/// \int e^{i x xi} (1+xi^2)^{-sigma/2} dxi for 0 < sigma < 1, x != 0.
inline double bessel_kernel(double x, double sigma) {
    require(sigma > 0.0 && sigma < 1.0, "bessel_kernel: sigma must lie in (0,1)");
    require(std::isfinite(x) && x != 0.0, "bessel_kernel: kernel is singular at x = 0");
    const double y = std::abs(x);
    auto amp = [&](cplx z) { return std::pow(1.0 + z * z, -0.5 * sigma); };
    // Branch points sit at +-i; stay well inside the first quadrant.
    return 2.0 * detail::ray_fourier(amp, y, pi / 3.0).real();
}

/// |bessel_kernel(x)| * |x|^{1-sigma}; bounded for 0 < |x| <= 1.
inline double bessel_kernel_check(double x, double sigma) {
    return std::abs(bessel_kernel(x, sigma)) * std::pow(std::abs(x), 1.0 - sigma);
}

/// (t1, t2, alpha, a, gamma, N) of the high-frequency oscillatory kernel.
struct OscillatoryKernelParams {
    double t1 = 0.5;
    double t2 = 0.25;
    double alpha = 0.5;
    double a = 0.5;
    double gamma = 2.0;
    double N = 4096.0;

    double t() const { return t1 - t2; }
    double eps() const { return std::pow(t1, gamma) + std::pow(t2, gamma); }

    void validate() const {
        require(t1 > 0.0 && t1 < 1.0 && t2 > 0.0 && t2 < 1.0, "OscillatoryKernelParams: t1, t2 must lie in (0,1)");
        require(alpha > 0.0 && alpha < 1.0, "OscillatoryKernelParams: alpha must lie in (0,1)");
        require(a > 0.0 && gamma > 0.0, "OscillatoryKernelParams: a, gamma must be positive");
        require(N >= 1.0, "OscillatoryKernelParams: N must be >= 1");
    }
};

namespace detail {

/// Amplitude e^{-eps|xi|^a} (1+xi^2)^{-alpha/2}; cutoffs applied by callers.
inline double oscillatory_amplitude(double xi, const OscillatoryKernelParams& p, double eps) {
    return std::exp(-eps * abs_pow(xi, p.a)) * std::pow(1.0 + xi * xi, -0.5 * p.alpha);
}

/// Panel width keeping the phase t xi^a - x xi within pi/4 per panel.
inline double phase_limited_width(double xi, double x, const OscillatoryKernelParams& p, double resolution) {
    const double dphase = std::abs(x) + std::abs(p.t()) * p.a * std::pow(xi, p.a - 1.0);
    return std::min(resolution, 0.25 * pi / std::max(dphase, 1e-300));
}

/// 2 \int_lo^hi e^{i t xi^a} G(xi) cos(x xi) dxi for even G, with panel width
/// bounded by both phase resolution and `resolution(xi)`; evaluated at two
/// panel sizes to certify convergence.
template <class G, class Res>
cplx even_oscillatory_integral(double x, const OscillatoryKernelParams& p, double lo, double hi, G&& g, Res&& resolution) {
    const double t = p.t();
    auto f = [&](double xi) { return std::polar(2.0 * g(xi) * std::cos(x * xi), t * std::pow(xi, p.a)); };
    const cplx coarse = quad::gl_composite(f, lo, hi, [&](double xi) { return phase_limited_width(xi, x, p, resolution(xi)); });
    const cplx fine =
        quad::gl_composite(f, lo, hi, [&](double xi) { return 0.5 * phase_limited_width(xi, x, p, resolution(xi)); });
    double scale = 0.0;
    {
        // crude L1 size of the integrand for the convergence test
        const double mid = 0.5 * (lo + hi);
        scale = std::abs(2.0 * g(mid)) * (hi - lo);
    }
    if (std::abs(fine - coarse) > 1e-9 * std::max(scale, std::abs(fine)) + 1e-300)
        throw numeric_failure("oscillatory quadrature did not converge at x=" + std::to_string(x) +
                              " (panel halving changed value by " + std::to_string(std::abs(fine - coarse)) + ")");
    return fine;
}

}  // namespace detail

/// Lambda_M(x) = \int e^{i t|xi|^a} e^{-i x xi} g_M(xi) dxi,
/// g_M = e^{-eps|xi|^a}(1+xi^2)^{-alpha/2} eta(xi/M) mu(xi/N).
inline cplx lambda_M(double x, const OscillatoryKernelParams& prm, double M, const CutoffFamily& cutoffs = {}) {
    prm.validate();
    require(M >= 1.0 && std::exp2(std::round(std::log2(M))) == M, "lambda_M: M must be a dyadic integer >= 1");
    const double eps = prm.eps();
    const double hi = std::min(CutoffFamily::eta_outer * M, CutoffFamily::mu_support * prm.N);
    const double lo = CutoffFamily::eta_inner * M;
    if (hi <= lo) return {0.0, 0.0};
    auto g = [&](double xi) {
        return detail::oscillatory_amplitude(xi, prm, eps) * cutoffs.eta(xi / M) * cutoffs.mu(xi / prm.N);
    };
    return detail::even_oscillatory_integral(x, prm, lo, hi, g, [M](double) { return M / 32.0; });
}

/// Lambda_M sampled on a uniform x-grid by a single FFT of the (compactly
/// supported) symbol; used for L1 norms.
inline GridFunction lambda_M_profile(const OscillatoryKernelParams& prm, double M, const CutoffFamily& cutoffs = {}) {
    prm.validate();
    const double eps = prm.eps();
    const double t = prm.t();
    // Stationary-phase window: x = a t xi^{a-1} for xi in [M, 4M], plus decaying tails.
    const double slope_lo = prm.a * std::abs(t) * std::pow(M, prm.a - 1.0);
    const double slope_hi = prm.a * std::abs(t) * std::pow(4.0 * M, prm.a - 1.0);
    const double extent = std::max(slope_lo, slope_hi) + 512.0 / M;
    const double period = 2.5 * extent;
    const double dxi = 2.0 * pi / period;
    const double band = 64.0 * M;  // x-resolution: 16 samples per shortest oscillation
    std::size_t n = 1;
    while (static_cast<double>(n) * dxi < band) n <<= 1;
    const SpectralGrid sg{-static_cast<double>(n / 2) * dxi, dxi, n};
    // The kernel uses e^{-i x xi}; sample the reflected symbol so that the
    // library's e^{+i x xi} inversion produces Lambda_M(x).
    auto symbol = [&](double xi) -> cplx {
        const double r = std::abs(xi);
        if (r < CutoffFamily::eta_inner * M || r > CutoffFamily::eta_outer * M) return 0.0;
        const double g = detail::oscillatory_amplitude(r, prm, eps) * cutoffs.eta(r / M) * cutoffs.mu(r / prm.N);
        return std::polar(g, t * std::pow(r, prm.a));
    };
    const auto spec = SpectrumFunction::sample(sg, symbol);
    return inverse_transform(spec, dual_grid(sg));
}

/// sum_j |Lambda_M(x_j)| dx over the sampled period.
inline double lambda_l1_norm(const OscillatoryKernelParams& prm, double M, const CutoffFamily& cutoffs = {}) {
    const auto prof = lambda_M_profile(prm, M, cutoffs);
    std::vector<double> mags(prof.size());
    for (std::size_t j = 0; j < prof.size(); ++j) mags[j] = std::abs(prof.values[j]);
    return pairwise_sum(mags) * prof.grid.dx;
}

/// L1 mass of Lambda_M split at |x| = 2^{2-a} M^{a-1} |t|, which encloses the
/// stationary-phase window x = a t xi^{a-1}, xi in [M, 4M], for 0 < a <= 1.
struct ZoneSplit {
    double near = 0.0;
    double far = 0.0;
};

inline ZoneSplit lambda_l1_zone_split(const OscillatoryKernelParams& prm, double M, const CutoffFamily& cutoffs = {}) {
    const auto prof = lambda_M_profile(prm, M, cutoffs);
    const double edge = std::exp2(2.0 - prm.a) * std::pow(M, prm.a - 1.0) * std::abs(prm.t());
    std::vector<double> near(prof.size(), 0.0), far(prof.size(), 0.0);
    for (std::size_t j = 0; j < prof.size(); ++j)
        (std::abs(prof.x(j)) <= edge ? near : far)[j] = std::abs(prof.values[j]);
    return {pairwise_sum(near) * prof.grid.dx, pairwise_sum(far) * prof.grid.dx};
}

struct LambdaL1Series {
    std::vector<double> M;             ///< 1, 2, 4, ..., M_max
    std::vector<double> l1;            ///< ||Lambda_M||_{L^1}
    std::vector<double> partial_sums;  ///< running sums of l1
    std::vector<double> worst_t1;      ///< maximising t1 per M (sup mode only)
    std::vector<double> worst_t2;
};

/// ||Lambda_M||_{L^1} for M = 1..M_max at the fixed (t1, t2) in prm.
inline LambdaL1Series lambda_l1_partial_sums(const OscillatoryKernelParams& prm, const CutoffFamily& cutoffs,
                                             double M_max) {
    prm.validate();
    require(M_max >= 1.0, "lambda_l1_partial_sums: M_max must be >= 1");
    LambdaL1Series s;
    double acc = 0.0;
    for (double M = 1.0; M <= M_max; M *= 2.0) {
        const double v = lambda_l1_norm(prm, M, cutoffs);
        acc += v;
        s.M.push_back(M);
        s.l1.push_back(v);
        s.partial_sums.push_back(acc);
        s.worst_t1.push_back(prm.t1);
        s.worst_t2.push_back(prm.t2);
    }
    return s;
}

/// Time pairs used for the uniform-in-time sup: t1 = 2^{-j/4}, j = 1..64, each
/// paired with t2 in {1e-9 t1, t1/2, t1}.
inline std::vector<std::pair<double, double>> default_time_pairs() {
    std::vector<std::pair<double, double>> pairs;
    for (int j = 1; j <= 64; ++j) {
        const double t1 = std::exp2(-0.25 * j);
        pairs.emplace_back(t1, 1e-9 * t1);
        pairs.emplace_back(t1, 0.5 * t1);
        pairs.emplace_back(t1, t1);
    }
    return pairs;
}

/// sup over sampled (t1, t2) of ||Lambda_M||_{L^1} for each dyadic M <= M_max.
/// The t1, t2 of `prm` are ignored; alpha, a, gamma, N are used.
inline LambdaL1Series lambda_l1_sup_series(const OscillatoryKernelParams& prm, const CutoffFamily& cutoffs, double M_max,
                                           const std::vector<std::pair<double, double>>& pairs = default_time_pairs()) {
    require(!pairs.empty(), "lambda_l1_sup_series: no time pairs");
    LambdaL1Series s;
    double acc = 0.0;
    for (double M = 1.0; M <= M_max; M *= 2.0) {
        std::vector<double> vals(pairs.size());
        parallel_for(pairs.size(), [&](std::size_t i) {
            OscillatoryKernelParams q = prm;
            q.t1 = pairs[i].first;
            q.t2 = pairs[i].second;
            vals[i] = lambda_l1_norm(q, M, cutoffs);
        });
        const auto it = std::max_element(vals.begin(), vals.end());
        const std::size_t best = static_cast<std::size_t>(it - vals.begin());
        acc += *it;
        s.M.push_back(M);
        s.l1.push_back(*it);
        s.partial_sums.push_back(acc);
        s.worst_t1.push_back(pairs[best].first);
        s.worst_t2.push_back(pairs[best].second);
    }
    return s;
}

/// Least-squares slope of log2 ||Lambda_M|| against log2 M over M >= M_from.
inline LineFit lambda_term_slope(const LambdaL1Series& s, double M_from = 1.0) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < s.M.size(); ++i) {
        if (s.M[i] < M_from) continue;
        x.push_back(std::log2(s.M[i]));
        y.push_back(std::log2(s.l1[i]));
    }
    return fit_line(x, y);
}

/// Predicted per-term log2-slope of the worst-case ||Lambda_M||_{L^1}:
/// (a/2)(1-1/gamma)_+ - alpha for 0<a<1, (1-1/gamma)_+ - alpha for a = 1.
inline double lambda_predicted_slope(double a, double gamma, double alpha) {
    require(a > 0.0 && a <= 1.0, "lambda_predicted_slope: stated for 0 < a <= 1");
    const double plus = std::max(0.0, 1.0 - 1.0 / gamma);
    return (a < 1.0 ? 0.5 * a * plus : plus) - alpha;
}

/// Full high-frequency kernel
///   \int e^{i t|xi|^a} e^{-i x xi} e^{-eps|xi|^a}(1+xi^2)^{-alpha/2}(1-chi(xi)) mu(xi/N) dxi.
inline cplx oscillatory_kernel(double x, const OscillatoryKernelParams& prm, const CutoffFamily& cutoffs = {}) {
    prm.validate();
    const double eps = prm.eps();
    const double lo = CutoffFamily::chi_plateau;
    double hi = CutoffFamily::mu_support * prm.N;
    // e^{-eps xi^a} < e^{-40} beyond this point.
    hi = std::min(hi, std::pow(40.0 / eps, 1.0 / prm.a));
    if (hi <= lo) return {0.0, 0.0};
    auto g = [&](double xi) {
        return detail::oscillatory_amplitude(xi, prm, eps) * (1.0 - cutoffs.chi(xi)) * cutoffs.mu(xi / prm.N);
    };
    auto resolution = [&](double xi) { return xi < 2.0 * CutoffFamily::chi_support ? 1.0 / 32.0 : xi / 32.0; };
    return detail::even_oscillatory_integral(x, prm, lo, hi, g, resolution);
}

/// sigma = (1/(a-1)) (alpha + (a-2)/2 + a(alpha - 1/2)/((a-1)gamma - a)).
inline double sigma_exponent(double a, double gamma, double alpha) {
    require(a > 0.0 && gamma > 0.0, "sigma_exponent: a, gamma must be positive");
    require(a != 1.0, "sigma_exponent: singular at a = 1");
    const double denom = (a - 1.0) * gamma - a;
    require(denom != 0.0, "sigma_exponent: singular at (a-1)gamma = a");
    return (alpha + 0.5 * (a - 2.0) + a * (alpha - 0.5) / denom) / (a - 1.0);
}

/// The majorant K(x) of the local oscillatory-kernel bound on 0 < |x| < 1.
///   0<a<1: |x|^{alpha-1} (gamma <= 1), |x|^{alpha-1} + |x|^{-sigma} (gamma > 1),
///          requires alpha > (a/2)(1-1/gamma)_+
///   a = 1: |x|^{alpha-1} + |x|^{gamma(alpha-1)}, requires alpha > (1-1/gamma)_+
///   a > 1: |x|^{alpha-1} (gamma <= 1, or gamma > 1 and alpha >= 1/2),
///          |x|^{-sigma} (1 < gamma < a/(a-1) and (a/2)(1-1/gamma) < alpha < 1/2)
inline double local_kernel_bound(double x, double alpha, double gamma, double a) {
    require(std::isfinite(x) && x != 0.0, "local_kernel_bound: x must be nonzero");
    require(alpha > 0.0 && alpha < 1.0, "local_kernel_bound: alpha must lie in (0,1)");
    require(a > 0.0 && gamma > 0.0, "local_kernel_bound: a, gamma must be positive");
    const double ax = std::abs(x);
    const double plus = std::max(0.0, 1.0 - 1.0 / gamma);
    if (a < 1.0) {
        if (!(alpha > 0.5 * a * plus))
            throw unsupported_regime("local_kernel_bound: need alpha > (a/2)(1-1/gamma)_+ for 0<a<1");
        if (gamma <= 1.0) return std::pow(ax, alpha - 1.0);
        return std::pow(ax, alpha - 1.0) + std::pow(ax, -sigma_exponent(a, gamma, alpha));
    }
    if (a == 1.0) {
        if (!(alpha > plus)) throw unsupported_regime("local_kernel_bound: need alpha > (1-1/gamma)_+ for a=1");
        return std::pow(ax, alpha - 1.0) + std::pow(ax, gamma * (alpha - 1.0));
    }
    if (gamma <= 1.0 || alpha >= 0.5) return std::pow(ax, alpha - 1.0);
    if (gamma < a / (a - 1.0) && alpha > 0.5 * a * (1.0 - 1.0 / gamma))
        return std::pow(ax, -sigma_exponent(a, gamma, alpha));
    throw unsupported_regime("local_kernel_bound: no stated bound for a>1 with these (gamma, alpha)");
}

/// |oscillatory_kernel(x)| / K(x).
inline double oscillatory_local_ratio(double x, const OscillatoryKernelParams& prm, const CutoffFamily& cutoffs = {}) {
    const double k = local_kernel_bound(x, prm.alpha, prm.gamma, prm.a);
    return std::abs(oscillatory_kernel(x, prm, cutoffs)) / k;
}

}  // namespace dlab
