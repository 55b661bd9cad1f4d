#pragma once

// Counterexample families behind the sharp Sobolev thresholds: the
// wave-packet family f_nu (0 < a < 1) and the indicator family f_A (a = 1),
// together with the exponent regressions run on them.

#include <dlab/core.hpp>
#include <dlab/cutoffs.hpp>
#include <dlab/maximal.hpp>
#include <dlab/regression.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace dlab {

/// Geometry of fhat_nu(xi) = nu g_nu(nu xi + 1/nu), where g_nu has plateau
/// |eta| < R/2 and support |eta| <= R, R = nu^{(a-1) - a/gamma}.
struct FNuProfile {
    double nu = 0.5;
    double a = 0.5;
    double gamma = 2.0;

    void validate() const {
        require(nu > 0.0 && nu < 1.0, "f_nu: nu must lie in (0,1)");
        require(a > 0.0 && a < 1.0, "f_nu: a must lie in (0,1)");
        require(gamma > 1.0, "f_nu: gamma must exceed 1");
    }

    double exponent() const { return (a - 1.0) - a / gamma; }
    double R() const { return std::pow(nu, exponent()); }
    double center() const { return -1.0 / (nu * nu); }
    double half_support() const { return R() / nu; }

    /// Length a nu^{2a/gamma - 2(a-1)} of the interval [0, .] on which P* f_nu is large.
    double designated_length() const { return a * std::pow(nu, 2.0 * a / gamma - 2.0 * (a - 1.0)); }
    /// The time t = x nu^{2(a-1)}/a paired with x in the designated interval.
    double designated_time(double x) const { return x * std::pow(nu, 2.0 * (a - 1.0)) / a; }

    double g(double eta, const CutoffFamily& c = {}) const { return c.chi(2.0 * eta / R()); }
    double fhat(double xi, const CutoffFamily& c = {}) const { return nu * g(nu * xi + 1.0 / nu, c); }
};

/// f_nu sampled with `samples` points across its exact support (for pointwise work).
inline SpectrumFunction build_f_nu(double nu, double a, double gamma, std::size_t samples = 4096) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    require(samples >= 16, "build_f_nu: need at least 16 samples");
    const double h = p.half_support();
    const SpectralGrid sg{p.center() - h, 2.0 * h / static_cast<double>(samples - 1), samples};
    return SpectrumFunction::sample(sg, [&](double xi) { return p.fhat(xi); });
}

/// f_nu sampled on the frequency grid dual to a periodic spatial grid of the
/// given period, oversampling the support width by `oversample`.
inline SpectrumFunction build_f_nu(double nu, double a, double gamma, double period, double oversample) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    require(period > 0.0 && oversample >= 1.0, "build_f_nu: bad period or oversampling");
    const double dxi = 2.0 * pi / period;
    std::size_t n = 16;
    while (static_cast<double>(n) * dxi < oversample * 2.0 * p.half_support()) n <<= 1;
    const SpectralGrid sg = dual_spectral_grid(GridSpec::periodic(period, n), p.center());
    return SpectrumFunction::sample(sg, [&](double xi) { return p.fhat(xi); });
}

/// ||f_nu||^2_{H^s} (squared norm).
inline double hs_norm_of_counterexample(double nu, double a, double gamma, double s) {
    const double n = sobolev_norm(build_f_nu(nu, a, gamma), s);
    return n * n;
}

/// F_{x,t,nu}(eta) = x eta/nu + t|eta/nu - 1/nu^2|^a - t/nu^{2a}, evaluated
/// without cancellation as t nu^{-2a} [(1 - eta nu)^a - 1] + x eta/nu.
inline double phase_deviation(double x, double t, double nu, double a, double eta) {
    const double u = eta * nu;
    require(u < 1.0, "phase_deviation: eta*nu must be < 1");
    const double scale = t * std::pow(nu, -2.0 * a);
    return x * eta / nu + scale * std::expm1(a * std::log1p(-u));
}

/// sup over the support |eta| <= R of |F| at the designated (x, t(x)).
inline double max_phase_deviation(double x, double nu, double a, double gamma, int samples = 2001) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    const double t = p.designated_time(x);
    double m = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double eta = p.R() * (-1.0 + 2.0 * i / (samples - 1.0));
        m = std::max(m, std::abs(phase_deviation(x, t, nu, a, eta)));
    }
    return m;
}

/// Log-log regression against a predicted exponent.
struct ScalingReport {
    std::vector<double> x;  ///< log2 of the scan parameter (nu or N)
    std::vector<double> y;  ///< log2 of the measured quantity
    LineFit fit;
    double predicted = 0.0;
    double tolerance = 0.0;  ///< relative tolerance on the slope
    bool pass() const { return std::abs(fit.slope - predicted) <= tolerance * std::abs(predicted); }
};

inline ScalingReport make_scaling_report(const std::vector<double>& params, const std::vector<double>& values,
                                         double predicted, double tolerance) {
    require(params.size() == values.size() && params.size() >= 2, "scaling report: need >= 2 samples");
    ScalingReport r;
    for (std::size_t i = 0; i < params.size(); ++i) {
        require(params[i] > 0.0 && values[i] > 0.0, "scaling report: values must be positive");
        r.x.push_back(std::log2(params[i]));
        r.y.push_back(std::log2(values[i]));
    }
    r.fit = fit_line(r.x, r.y);
    r.predicted = predicted;
    r.tolerance = tolerance;
    return r;
}

/// Regression of ||f_nu||^2_{H^s} against nu; predicted slope a - 4s - a/gamma.
inline ScalingReport norm_scaling_scan(const std::vector<double>& nus, double a, double gamma, double s,
                                       double tolerance = 0.05) {
    std::vector<double> v;
    for (double nu : nus) v.push_back(hs_norm_of_counterexample(nu, a, gamma, s));
    return make_scaling_report(nus, v, a - 4.0 * s - a / gamma, tolerance);
}

/// Time grid used for f_nu at a given nu: geometric 2^{-k}, k = 1..K, plus the
/// designated times of `designated_x`.
inline TimeGrid f_nu_time_grid(const FNuProfile& p, const std::vector<double>& designated_x, int K = 20) {
    std::vector<double> ts = TimeGrid::geometric(K).samples;
    for (double x : designated_x) ts.push_back(p.designated_time(x));
    return TimeGrid::from(std::move(ts));
}

/// x_i = L i / n, i = 1..n, on the designated interval (0, L].
inline std::vector<double> designated_points(const FNuProfile& p, int n) {
    require(n >= 1, "designated_points: n must be >= 1");
    const double L = p.designated_length();
    if (!(L > 0.0) || L / n <= 64.0 * std::numeric_limits<double>::epsilon())
        throw resolution_failure("designated interval below sampling resolution");
    std::vector<double> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(L * i / n);
    return xs;
}

/// min over designated x of P* f_nu(x), the sup taken over geometric times
/// plus every designated time. Predicted slope (a-1) - a/gamma in nu.
inline ScalingReport lower_bound_scan_f_nu(const std::vector<double>& nus, double a, double gamma, int n_x = 32,
                                           double tolerance = 0.10, std::vector<double>* minima = nullptr) {
    std::vector<double> mins(nus.size());
    parallel_for(nus.size(), [&](std::size_t i) {
        const FNuProfile p{nus[i], a, gamma};
        p.validate();
        const auto fhat = build_f_nu(p.nu, a, gamma);
        const auto xs = designated_points(p, n_x);
        const TimeGrid tg = f_nu_time_grid(p, xs);
        double m = std::numeric_limits<double>::infinity();
        for (double x : xs) m = std::min(m, maximal_at(fhat, a, gamma, tg, x));
        mins[i] = m;
    });
    if (minima) *minima = mins;
    const FNuProfile p0{0.5, a, gamma};
    return make_scaling_report(nus, mins, p0.exponent(), tolerance);
}

/// The indicator spectrum of A = [-N, -N/2], midpoint-sampled with max(4096, 32N) cells.
inline SpectrumFunction build_f_A(double N) {
    require(std::isfinite(N) && N >= 1.0, "build_f_A: N must be >= 1");
    const std::size_t cells = std::max<std::size_t>(4096, static_cast<std::size_t>(std::ceil(32.0 * N)));
    const double dxi = 0.5 * N / static_cast<double>(cells);
    const SpectralGrid sg{-N + 0.5 * dxi, dxi, cells};
    return SpectrumFunction(sg, std::vector<cplx>(cells, cplx(1.0, 0.0)));
}

/// min over x in E = (0, N^{-1/gamma}] of P* f_A(x), where the time grid
/// contains t = x. Predicted slope 1 in N.
inline ScalingReport lower_bound_scan_f_A(const std::vector<double>& Ns, double gamma, int n_x = 16,
                                          double tolerance = 0.05, std::vector<double>* minima = nullptr,
                                          int K = 20) {
    require(gamma > 1.0, "lower_bound_scan_f_A: gamma must exceed 1");
    std::vector<double> mins(Ns.size());
    parallel_for(Ns.size(), [&](std::size_t i) {
        const double N = Ns[i];
        const double E = std::pow(N, -1.0 / gamma);
        require(E < 1.0, "lower_bound_scan_f_A: need N > 1 so that t = x stays below 1");
        std::vector<double> xs, ts = TimeGrid::geometric(K).samples;
        for (int k = 1; k <= n_x; ++k) {
            xs.push_back(E * k / n_x);
            ts.push_back(xs.back());
        }
        const auto fhat = build_f_A(N);
        const TimeGrid tg = TimeGrid::from(ts);
        double m = std::numeric_limits<double>::infinity();
        for (double x : xs) m = std::min(m, maximal_at(fhat, 1.0, gamma, tg, x));
        mins[i] = m;
    });
    if (minima) *minima = mins;
    return make_scaling_report(Ns, mins, 1.0, tolerance);
}

enum class Side { below, at, above };

inline const char* to_string(Side s) {
    switch (s) {
        case Side::below: return "below-threshold";
        case Side::at: return "at-threshold";
        case Side::above: return "above-threshold";
    }
    return "?";
}

struct Verdict {
    Side side = Side::at;
    double threshold = 0.0;
};

/// (a/4)(1 - 1/gamma) for 0 < a < 1, (1/2)(1 - 1/gamma) for a = 1.
inline double sharpness_threshold(double a, double gamma) {
    require(std::isfinite(gamma) && gamma > 1.0, "sharpness_threshold: gamma must be finite and > 1");
    require(a > 0.0 && a <= 1.0, "sharpness_threshold: a must lie in (0,1]");
    return (a < 1.0 ? 0.25 * a : 0.5) * (1.0 - 1.0 / gamma);
}

inline Verdict sharpness_verdict(double a, double gamma, double s) {
    Verdict v;
    v.threshold = sharpness_threshold(a, gamma);
    if (std::abs(s - v.threshold) <= 1e-12) v.side = Side::at;
    else v.side = s < v.threshold ? Side::below : Side::above;
    return v;
}

/// Scan members for the strong-ratio test: f_nu on a periodic grid covering
/// B(0,1), with geometric times plus the designated times of n_x points.
inline ScanMember f_nu_scan_member(double nu, double a, double gamma, double period = 4.0, double oversample = 2.0,
                                   int n_x = 64) {
    const FNuProfile p{nu, a, gamma};
    p.validate();
    // at least 16 cells across the designated interval
    const double cells = 16.0 * period / p.designated_length();
    oversample = std::max(oversample, cells * (2.0 * pi / period) / (2.0 * p.half_support()));
    ScanMember m{build_f_nu(nu, a, gamma, period, oversample), {}};
    const GridSpec grid = dual_grid(m.fhat.grid);
    if (p.designated_length() < grid.dx)
        throw resolution_failure("designated interval shorter than one grid cell at nu=" + std::to_string(nu));
    m.tg = f_nu_time_grid(p, designated_points(p, n_x));
    return m;
}

/// (measure of {x in designated interval : P* f_nu > c R}) (c R)^2 / ||f_nu||^2_{H^s}.
/// Grows without bound as nu -> 0 iff s is below threshold.
inline double weak_type_ratio(double nu, double a, double gamma, double s, double c = 0.25, double period = 4.0,
                              double oversample = 2.0) {
    const FNuProfile p{nu, a, gamma};
    const auto m = f_nu_scan_member(nu, a, gamma, period, oversample);
    const GridSpec grid = dual_grid(m.fhat.grid);
    const double L = p.designated_length();
    if (L < 8.0 * grid.dx) throw resolution_failure("designated interval spans fewer than 8 grid cells");
    const auto pm = maximal_function(m.fhat, a, gamma, m.tg, grid);
    const double lam = c * p.R();
    const double meas = level_set_measure(pm.value, lam, 0.0, L);
    const double hs = sobolev_norm(m.fhat, s);
    return meas * lam * lam / (hs * hs);
}

}  // namespace dlab
