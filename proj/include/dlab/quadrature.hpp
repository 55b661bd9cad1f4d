#pragma once

// Composite Gauss-Legendre panels and a globally adaptive Gauss-Kronrod (7/15)
// integrator. Both accept real or complex integrands.

#include <dlab/errors.hpp>
#include <dlab/parallel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace dlab::quad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre& gauss_legendre16() {
    static const GaussLegendre rule(16);
    return rule;
}

/// One Gauss-Legendre panel on [a, b].
template <class F>
auto gl_panel(F&& f, double a, double b) {
    const auto& r = gauss_legendre16();
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    using T = decltype(f(c));
    T acc{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(c + h * r.nodes[i]);
    return acc * h;
}

/// Composite Gauss-Legendre over [a, b]; each panel starting at u has width at
/// most max_width(u). Panel sums are combined pairwise.
template <class F, class W>
auto gl_composite(F&& f, double a, double b, W&& max_width, std::size_t max_panels = 50'000'000) {
    using T = decltype(f(a));
    std::vector<T> parts;
    double u = a;
    while (u < b) {
        double w = max_width(u);
        if (!(w > 0.0)) throw numeric_failure("gl_composite: non-positive panel width");
        const double v = std::min(b, u + w);
        parts.push_back(gl_panel(f, u, v));
        if (parts.size() > max_panels) throw numeric_failure("gl_composite: panel budget exceeded");
        if (v == u) break;
        u = v;
    }
    return pairwise_sum(parts);
}

template <class T>
struct AdaptiveResult {
    T value{};
    double error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
auto gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    using T = decltype(f(c));
    const T fc = f(c);
    T kron = wgk[7] * fc;
    T gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const T s = f(c - dx) + f(c + dx);
        kron += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    return Segment<T>{a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive G7/K15 over the breakpoints `edges` (sorted, >= 2 entries).
/// Bisects the worst segment until total error <= max(abs_tol, rel_tol*|I|).
template <class F>
auto adaptive(F&& f, std::span<const double> edges, double abs_tol, double rel_tol,
              std::size_t max_segments = 20000) {
    require(edges.size() >= 2, "quad::adaptive: need at least two breakpoints");
    using T = decltype(f(edges[0]));
    std::priority_queue<detail::Segment<T>> heap;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] > edges[i]) heap.push(detail::gk15(f, edges[i], edges[i + 1]));

    auto totals = [&heap] {
        auto copy = heap;
        T v{};
        double e = 0.0;
        std::vector<T> vals;
        while (!copy.empty()) {
            vals.push_back(copy.top().value);
            e += copy.top().error;
            copy.pop();
        }
        v = pairwise_sum(vals);
        return std::pair<T, double>(v, e);
    };

    AdaptiveResult<T> out;
    auto [value, error] = totals();
    T running_value = value;
    double running_error = error;
    while (!heap.empty() && running_error > std::max(abs_tol, rel_tol * std::abs(running_value))) {
        if (heap.size() >= max_segments) break;
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    std::tie(value, error) = totals();
    out.value = value;
    out.error = error;
    out.intervals = heap.size();
    out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value)) * 1.0000001;
    return out;
}

template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, double rel_tol, std::size_t max_segments = 20000) {
    const std::array<double, 2> e{a, b};
    return adaptive(std::forward<F>(f), std::span<const double>(e), abs_tol, rel_tol, max_segments);
}

/// Breakpoints 0, r*2^{-levels}, ..., r/2, r: resolves endpoint singularities at 0.
inline std::vector<double> geometric_breakpoints(double r, int levels) {
    std::vector<double> e;
    e.push_back(0.0);
    for (int k = levels; k >= 0; --k) e.push_back(std::ldexp(r, -k));
    return e;
}

}  // namespace dlab::quad
