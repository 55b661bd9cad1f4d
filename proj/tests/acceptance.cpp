// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// diagnostics. Pass criterion numbers as arguments to run a subset.
// Exit status is nonzero if any selected criterion fails.

#include <dlab/dlab.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace dlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> notes;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> dyadic(int k_lo, int k_hi) {
    std::vector<double> v;
    for (int k = k_lo; k <= k_hi; ++k) v.push_back(std::ldexp(1.0, k));
    return v;
}

// 1. Complex Gaussian: fhat = e^{-xi^2}, a = 2, gamma = 1 gives
//    sqrt(pi/B) e^{-x^2/(4B)}, B = 1 + (1-i)t.
Outcome gaussian_oracle() {
    Outcome o{true, "", {}};
    const auto grid = GridSpec::periodic(80.0, 2048);
    const auto fhat = SpectrumFunction::sample(dual_spectral_grid(grid), [](double xi) { return std::exp(-xi * xi); });
    double worst = 0.0, slowest = 0.0;
    for (double t : {0.1, 0.25, 0.5}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto u = propagate(fhat, {2.0, 1.0, t}, grid);
        const double dt = seconds_since(t0);
        const cplx B(1.0 + t, -t);
        double err = 0.0, peak = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            if (std::abs(x) > 10.0) continue;
            const cplx exact = std::sqrt(pi / B) * std::exp(-x * x / (4.0 * B));
            err = std::max(err, std::abs(u.values[j] - exact));
            peak = std::max(peak, std::abs(exact));
        }
        o.notes.push_back(fmt("t=%.2f rel err %.2e (%.3f s)", t, err / peak, dt));
        worst = std::max(worst, err / peak);
        slowest = std::max(slowest, dt);
    }
    o.pass = worst <= 1e-8 && slowest < 1.0;
    o.summary = fmt("max rel err %.2e <= 1e-8, slowest case %.3f s < 1 s", worst, slowest);
    return o;
}

// 2. sup of |L| / majorant over a grid of (x, t), and under 2x refinement.
Outcome poisson_bound() {
    auto sweep = [](double a, int nt, int nx) {
        double sup = 0.0;
        for (int i = 0; i < nt; ++i) {
            const double t = std::pow(1e-3, 1.0 - static_cast<double>(i) / (nt - 1));
            for (int j = 0; j < nx; ++j) sup = std::max(sup, poisson_bound_ratio(50.0 * j / (nx - 1), t, a));
        }
        return sup;
    };
    Outcome o{true, "", {}};
    const auto t0 = std::chrono::steady_clock::now();
    double worst_change = 0.0;
    bool finite = true;
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        const double base = sweep(a, 20, 200), fine = sweep(a, 40, 400);
        const double change = std::abs(fine - base) / base;
        finite = finite && std::isfinite(base) && std::isfinite(fine);
        worst_change = std::max(worst_change, change);
        o.notes.push_back(fmt("a=%.1f sup %.4f, refined %.4f (change %.1f%%)", a, base, fine, 100.0 * change));
    }
    const double dt = seconds_since(t0);
    o.pass = finite && worst_change < 0.10 && dt < 120.0;
    o.summary = fmt("sup finite, largest refinement change %.1f%% < 10%%, %.1f s < 120 s", 100.0 * worst_change, dt);
    return o;
}

// 3. L(x,t,a) = t^{-1/a} L(x t^{-1/a}, 1, a) on random samples.
Outcome scaling_identity() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(-20.0, 20.0), ulogt(std::log(1e-3), 0.0), ua(0.3, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng), t = std::exp(ulogt(rng)), a = ua(rng);
        const double r = std::pow(t, -1.0 / a);
        const cplx lhs = poisson_kernel(x, t, a), rhs = r * poisson_kernel(x * r, 1.0, a);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return {worst <= 1e-8, fmt("max rel err %.2e over 100 samples <= 1e-8", worst), {}};
}

// 4. Per-term slope of the worst-case ||Lambda_M||_1 across the threshold alpha* = 0.125.
Outcome summability_crossover() {
    Outcome o{true, "", {}};
    const auto t0 = std::chrono::steady_clock::now();
    OscillatoryKernelParams prm;
    prm.a = 0.5;
    prm.gamma = 2.0;
    prm.N = 4096.0;
    double slope_hi = 0.0, slope_lo = 0.0;
    for (double alpha : {0.2, 0.05}) {
        prm.alpha = alpha;
        const auto s = lambda_l1_sup_series(prm, {}, 1024.0);
        const double slope = lambda_term_slope(s).slope;
        (alpha == 0.2 ? slope_hi : slope_lo) = slope;
        o.notes.push_back(fmt("alpha=%.2f slope %.4f (predicted %.4f), tail slope from M=64 %.4f", alpha, slope,
                              lambda_predicted_slope(0.5, 2.0, alpha), lambda_term_slope(s, 64.0).slope));
        for (std::size_t i = 0; i < s.M.size(); i += 3) {
            OscillatoryKernelParams q = prm;
            q.t1 = s.worst_t1[i];
            q.t2 = s.worst_t2[i];
            const auto z = lambda_l1_zone_split(q, s.M[i]);
            o.notes.push_back(fmt("  M=%-5g |Lambda|_1=%.4f at (t1,t2)=(%.3g,%.3g): stationary zone %.4f, far zone %.4f",
                                  s.M[i], s.l1[i], q.t1, q.t2, z.near, z.far));
        }
    }
    const double dt = seconds_since(t0);
    o.pass = slope_hi <= -0.05 && slope_lo >= 0.05 && dt < 300.0;
    o.summary = fmt("slope %.4f at alpha=0.2 (need <= -0.05), %.4f at alpha=0.05 (need >= +0.05), %.1f s", slope_hi,
                    slope_lo, dt);
    return o;
}

// 5. ||f_nu||^2_{H^s} ~ nu^{a - 4s - a/gamma}.
Outcome norm_scaling() {
    Outcome o{true, "", {}};
    const auto nus = dyadic(-10, -3);
    for (double s : {0.03, 0.1}) {
        const auto r = norm_scaling_scan(nus, 0.5, 2.0, s, 0.05);
        const bool ok = r.pass() && r.fit.r2 >= 0.99;
        o.pass = o.pass && ok;
        o.summary += fmt("%ss=%.2f slope %.4f vs %.4f (R2 %.5f)", o.summary.empty() ? "" : "; ", s, r.fit.slope,
                         r.predicted, r.fit.r2);
    }
    return o;
}

// 6. Lower bounds for P* on the counterexample families.
Outcome lower_bounds() {
    Outcome o{true, "", {}};
    const double a = 0.5, gamma = 2.0;
    const auto nus = dyadic(-10, -3);
    std::vector<double> mins;
    const auto rn = lower_bound_scan_f_nu(nus, a, gamma, 32, 0.10, &mins);
    o.notes.push_back(fmt("f_nu: slope %.4f vs %.4f (R2 %.4f), tolerance 10%%", rn.fit.slope, rn.predicted, rn.fit.r2));

    // Witness values: each x paired only with its designated time.
    std::vector<double> witness;
    for (double nu : nus) {
        const FNuProfile p{nu, a, gamma};
        const auto fh = build_f_nu(nu, a, gamma);
        double m = INFINITY;
        for (double x : designated_points(p, 32)) m = std::min(m, maximal_at(fh, a, gamma, TimeGrid{{p.designated_time(x)}}, x));
        witness.push_back(m);
    }
    const auto rw = make_scaling_report(nus, witness, rn.predicted, 0.10);
    o.notes.push_back(fmt("f_nu: witness-time slope %.4f (diagnostic)", rw.fit.slope));
    for (std::size_t i = 0; i < nus.size(); ++i)
        o.notes.push_back(fmt("  nu=2^%d  min P* / R = %.4f, witness / R = %.4f", static_cast<int>(std::log2(nus[i])),
                              mins[i] / FNuProfile{nus[i], a, gamma}.R(), witness[i] / FNuProfile{nus[i], a, gamma}.R()));

    const auto Ns = dyadic(4, 10);
    const auto ra = lower_bound_scan_f_A(Ns, gamma, 16, 0.05, &mins);
    o.notes.push_back(fmt("f_A: slope %.4f vs 1 (R2 %.4f), tolerance 0.05", ra.fit.slope, ra.fit.r2));
    for (std::size_t i = 0; i < Ns.size(); ++i) o.notes.push_back(fmt("  N=%-5g min P* / N = %.4f", Ns[i], mins[i] / Ns[i]));
    const double floor64 = 32.0 * std::exp(-1.0);
    const bool floor_ok = mins[2] >= floor64;
    o.notes.push_back(fmt("f_A floor at N=64: %.4f >= %.4f", mins[2], floor64));

    o.pass = rn.pass() && std::abs(ra.fit.slope - 1.0) <= 0.05 && floor_ok;
    o.summary = fmt("f_nu slope %.4f (need -0.75 +- 10%%), f_A slope %.4f (need 1 +- 0.05), floor %s", rn.fit.slope,
                    ra.fit.slope, floor_ok ? "ok" : "violated");
    return o;
}

// 7. Strong-ratio scan on f_nu above and below the threshold 1/16.
Outcome strong_ratio() {
    Outcome o{true, "", {}};
    const double a = 0.5, gamma = 2.0, thr = sharpness_threshold(a, gamma);
    auto nus = dyadic(-10, -3);
    std::reverse(nus.begin(), nus.end());  // nu decreasing
    std::vector<ScanMember> fam;
    for (double nu : nus) fam.push_back(f_nu_scan_member(nu, a, gamma));
    double band = 0.0, growth = 0.0;
    bool monotone = true;
    for (double s : {thr + 0.05, thr - 0.03}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rows = strong_ratio_scan(fam, a, gamma, s, ScanDomain::local_unit_ball);
        std::string line = fmt("s=%.4f ratios:", s);
        double lo = INFINITY, hi = 0.0;
        bool inc = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            line += fmt(" %.3f", rows[i].ratio);
            lo = std::min(lo, rows[i].ratio);
            hi = std::max(hi, rows[i].ratio);
            if (i > 0 && rows[i].ratio <= rows[i - 1].ratio) inc = false;
        }
        o.notes.push_back(line + fmt(" (%.0f s)", seconds_since(t0)));
        if (s > thr) band = hi / lo;
        else {
            growth = rows.back().ratio / rows.front().ratio;
            monotone = inc;
        }
    }
    o.pass = band <= 2.0 && monotone && growth >= 4.0;
    o.summary = fmt("above threshold max/min %.3f (need <= 2); below threshold growth %.3fx %s (need monotone, >= 4x)",
                    band, growth, monotone ? "monotone" : "not monotone");
    return o;
}

// 8. ||P^t f - f||_inf -> 0 along t = 2^{-k} for Gaussian data.
Outcome convergence() {
    Outcome o{true, "", {}};
    const auto grid = GridSpec::periodic(80.0, 2048);
    // f(x) = e^{-x^2/2}
    const auto fhat = SpectrumFunction::sample(dual_spectral_grid(grid), [](double xi) {
        return std::exp(-0.5 * xi * xi) / std::sqrt(2.0 * pi);
    });
    const auto f = inverse_transform(fhat, grid);
    for (auto [a, gamma] : {std::pair{0.5, 2.0}, std::pair{1.0, 2.0}, std::pair{0.5, 0.5}}) {
        double prev = INFINITY, last = 0.0;
        bool mono = true;
        for (int k = 1; k <= 20; ++k) {
            last = max_abs_difference(propagate(fhat, {a, gamma, std::ldexp(1.0, -k)}, grid), f);
            if (last >= prev) mono = false;
            prev = last;
        }
        const bool ok = mono && last < 1e-6;
        o.pass = o.pass && ok;
        o.notes.push_back(fmt("(a,gamma)=(%.1f,%.1f): %s, error at k=20 %.3e", a, gamma,
                              mono ? "monotone" : "not monotone", last));
    }
    o.summary = o.pass ? "all three monotone and below 1e-6 at k=20" : "see per-case lines";
    return o;
}

// 9. Energy: Lebesgue value 8/3 at s = 1/2 and the exact two-atom case.
Outcome energy_oracle() {
    Outcome o{true, "", {}};
    const double exact = 8.0 / 3.0;
    auto rms = [&](std::size_t n) {
        double sq = 0.0;
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const double r = energy(uniform_random_measure(n, seed), 0.5).value / exact - 1.0;
            sq += r * r;
        }
        return std::sqrt(sq / 8.0);
    };
    const double e4096 = energy(uniform_random_measure(4096, 0), 0.5).value;
    const double r4096 = rms(4096), r8192 = rms(8192);
    const DiscreteMeasure two{{{0.1, 0.3}, {0.35, 0.7}}};
    const double two_exact = 2.0 * 0.3 * 0.7 * std::pow(0.25, -0.5);
    const double two_err = std::abs(energy(two, 0.5).value - two_exact);
    o.notes.push_back(fmt("seed 0 at 4096 atoms: %.6f (rel %.4f)", e4096, e4096 / exact - 1.0));
    o.notes.push_back(fmt("RMS rel error over 8 seeds: %.4f at 4096, %.4f at 8192", r4096, r8192));
    o.pass = std::abs(e4096 / exact - 1.0) <= 0.01 && r8192 < r4096 && two_err <= 1e-12;
    o.summary = fmt("rel err %.4f <= 1%%, RMS shrinks %.4f -> %.4f, two-atom err %.1e", std::abs(e4096 / exact - 1.0),
                    r4096, r8192, two_err);
    return o;
}

// 10. Box dimension of reference sets, the Schwartz probe and Knapp spot checks.
Outcome dimension_probes() {
    Outcome o{true, "", {}};
    std::vector<double> line;
    for (int i = 0; i < 100000; ++i) line.push_back(i / 100000.0);
    const double d_line = box_dimension(line, dyadic_scales(2, 12)).value;
    const double d_point = box_dimension({0.3}, dyadic_scales(2, 12)).value;
    const double d_cantor = box_dimension(cantor_points(8), dyadic_scales(1, 12)).value;
    const bool ref_ok = std::abs(d_line - 1.0) <= 0.05 && std::abs(d_point) <= 0.05 && std::abs(d_cantor - 0.631) <= 0.03;
    o.notes.push_back(fmt("interval %.4f, point %.4f, Cantor depth 8 %.4f", d_line, d_point, d_cantor));

    const auto grid = GridSpec::periodic(40.0, 4096);
    const auto fhat = SpectrumFunction::sample(dual_spectral_grid(grid), [](double xi) {
        return std::exp(-0.25 * xi * xi) / (2.0 * std::sqrt(pi));
    });
    const auto pr = divergence_probe(fhat, 0.5, 2.0, 0.2, 1e-3, TimeGrid{{std::ldexp(1.0, -20)}}, grid);
    o.notes.push_back(fmt("Schwartz probe: %zu points, max discrepancy %.2e", pr.points.size(), pr.max_discrepancy));

    bool knapp_ok = true;
    for (double s : {0.15, 0.2}) {
        const auto k = knapp_divergence_probe(std::ldexp(1.0, -6), 0.5, 2.0, s);
        const double bound = dim_bound_exponent(0.5, 2.0, s);
        const bool ok = k.box.defined && k.box.value <= bound + 0.15;
        knapp_ok = knapp_ok && ok;
        o.notes.push_back(fmt("Knapp s=%.2f: levels %d, ||f||_Hs %.3f, %zu points, box %.3f <= bound %.3f + 0.15"
                              " (nominal %.3f)", s, k.m, k.hs_norm, k.points, k.box.value, bound, k.nominal_dimension));
    }
    o.pass = ref_ok && pr.points.empty() && knapp_ok;
    o.summary = fmt("reference sets %s, Schwartz probe %s, Knapp spot checks %s", ref_ok ? "ok" : "off",
                    pr.points.empty() ? "empty" : "non-empty", knapp_ok ? "within bound" : "exceed bound");
    return o;
}

// 11. Heat-semigroup domination by the Hardy-Littlewood maximal function.
Outcome domination() {
    Outcome o{true, "", {}};
    std::vector<double> ts;
    for (int k = 0; k <= 10; ++k) ts.push_back(std::ldexp(1.0, -k));
    auto gaussian = [](std::size_t n) {
        const auto g = GridSpec::periodic(40.0, n);
        return std::pair{g, SpectrumFunction::sample(dual_spectral_grid(g), [](double xi) {
                             return std::exp(-0.25 * xi * xi) / (2.0 * std::sqrt(pi));
                         })};
    };
    const auto [g1, f1] = gaussian(2048);
    const auto [g2, f2] = gaussian(4096);
    double worst = 0.0;
    bool finite = true;
    for (double a : {0.5, 1.0, 2.0}) {
        const double r1 = domination_check(f1, a, ts, g1), r2 = domination_check(f2, a, ts, g2);
        const double d1 = domination_check(f1, a, ts, g1, true), d2 = domination_check(f2, a, ts, g2, true);
        finite = finite && std::isfinite(r1) && std::isfinite(r2);
        worst = std::max(worst, std::abs(r2 - r1) / r1);
        o.notes.push_back(fmt("a=%.1f ratio %.5f -> %.5f; with derivative term %.5f -> %.5f", a, r1, r2, d1, d2));
    }
    o.pass = finite && worst < 0.10;
    o.summary = fmt("finite, largest refinement change %.2f%% < 10%%", 100.0 * worst);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Gaussian oracle", gaussian_oracle},
        {"Poisson-type kernel bound", poisson_bound},
        {"kernel scaling identity", scaling_identity},
        {"dyadic summability crossover", summability_crossover},
        {"f_nu norm scaling", norm_scaling},
        {"counterexample lower bounds", lower_bounds},
        {"strong-ratio scan", strong_ratio},
        {"pointwise convergence", convergence},
        {"energy oracle", energy_oracle},
        {"dimension probes", dimension_probes},
        {"heat-semigroup domination", domination},
    };
    std::vector<bool> selected(criteria.size(), argc <= 1);
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[k - 1] = true;
    }
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected[i]) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), {}};
        }
        std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary.c_str(),
                    seconds_since(t0));
        for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu selected criteria failed\n", failures,
                static_cast<std::size_t>(std::count(selected.begin(), selected.end(), true)));
    return failures == 0 ? 0 : 1;
}
