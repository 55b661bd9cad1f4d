#include <catch_amalgamated.hpp>

#include <dlab/maximal.hpp>

#include "helpers.hpp"

using namespace dlab;
using testing_helpers::gaussian_spectrum;

TEST_CASE("time grids", "[maximal]") {
    const auto g = TimeGrid::geometric(4);
    REQUIRE(g.samples == std::vector<double>{0.0625, 0.125, 0.25, 0.5});
    const auto u = TimeGrid::from({0.3, 0.1, 0.3, 0.2});
    REQUIRE(u.samples == std::vector<double>{0.1, 0.2, 0.3});
    REQUIRE(TimeGrid::merge(g, u).size() == 7);
    REQUIRE_THROWS_AS(TimeGrid::from({0.5, 1.0}), dlab::invalid_argument);
    REQUIRE_THROWS_AS(TimeGrid::from({0.0}), dlab::invalid_argument);
    REQUIRE_THROWS_AS(TimeGrid{}.validate(), dlab::invalid_argument);
    REQUIRE_THROWS_AS((TimeGrid{{0.2, 0.1}}.validate()), dlab::invalid_argument);
}

TEST_CASE("maximal function dominates every sampled time and agrees with direct sums", "[maximal][property]") {
    const auto g = GridSpec::periodic(40.0, 512);
    const auto fh = gaussian_spectrum(dual_spectral_grid(g), 0.5);
    const auto tg = TimeGrid::geometric(8);
    const auto pm = maximal_function(fh, 0.5, 2.0, tg, g);
    for (double t : tg.samples) {
        const auto u = propagate(fh, {0.5, 2.0, t}, g);
        for (std::size_t j = 0; j < g.n; ++j) REQUIRE(pm.value.values[j].real() >= std::abs(u.values[j]));
    }
    for (std::size_t j = 200; j < 312; j += 13) {
        double arg = 0.0;
        const double direct = maximal_at(fh, 0.5, 2.0, tg, g.x(j), &arg);
        REQUIRE(std::abs(direct - pm.value.values[j].real()) <= 1e-12);
        REQUIRE(arg == pm.argmax_t[j]);
    }
}

TEST_CASE("Hardy-Littlewood maximal function of a single spike", "[maximal]") {
    const GridSpec g{0.0, 1.0, 41};
    std::vector<cplx> v(41, 0.0);
    v[20] = 1.0;
    const auto Mf = hardy_littlewood(GridFunction(g, v));
    for (std::size_t j = 0; j < 41; ++j) {
        const double d = std::abs(static_cast<double>(j) - 20.0);
        REQUIRE(Mf.values[j].real() == Catch::Approx(1.0 / (2.0 * d + 1.0)));
    }
}

TEST_CASE("Hardy-Littlewood dominates |f| and preserves constants in the interior", "[maximal][property]") {
    const auto g = GridSpec::periodic(20.0, 256);
    const auto f = GridFunction::sample(g, [](double x) { return std::sin(3.0 * x) * std::exp(-x * x / 8.0); });
    const auto Mf = hardy_littlewood(f);
    for (std::size_t j = 0; j < g.n; ++j) REQUIRE(Mf.values[j].real() >= std::abs(f.values[j]) * (1.0 - 1e-14));
    const auto one = GridFunction::sample(g, [](double) { return 1.0; });
    const auto M1 = hardy_littlewood(one);
    for (std::size_t j = 0; j < g.n; ++j) REQUIRE(M1.values[j].real() == Catch::Approx(1.0));
}

TEST_CASE("heat semigroup is dominated by the Hardy-Littlewood maximal function", "[maximal]") {
    const auto g = GridSpec::periodic(40.0, 1024);
    const auto fh = gaussian_spectrum(dual_spectral_grid(g));
    std::vector<double> ts;
    for (int k = 0; k <= 10; ++k) ts.push_back(std::ldexp(1.0, -k));
    for (double a : {0.5, 1.0, 2.0}) {
        const double r = domination_check(fh, a, ts, g);
        REQUIRE(r <= 1.01);
        REQUIRE(r >= 0.9);
    }
    REQUIRE_THROWS_AS(domination_check(fh, 1.0, {}, g), dlab::invalid_argument);
}

TEST_CASE("level set measure", "[maximal]") {
    const GridSpec g{-1.0, 0.25, 9};
    const auto f = GridFunction::sample(g, [](double x) { return 1.0 - std::abs(x); });
    REQUIRE(level_set_measure(f, 0.5) == Catch::Approx(3 * 0.25));
    REQUIRE(level_set_measure(f, 0.5, 0.0, 1.0) == Catch::Approx(2 * 0.25));
    REQUIRE(level_set_measure(f, 2.0) == 0.0);
    REQUIRE_THROWS_AS(level_set_measure(f, 0.0), dlab::invalid_argument);
}

TEST_CASE("strong-ratio scan", "[maximal]") {
    const auto g = GridSpec::periodic(40.0, 1024);
    const ScanMember m{gaussian_spectrum(dual_spectral_grid(g)), TimeGrid::geometric(6)};
    const auto local = strong_ratio_scan({m}, 0.5, 2.0, 0.1, ScanDomain::local_unit_ball);
    const auto global = strong_ratio_scan({m}, 0.5, 2.0, 0.1, ScanDomain::global);
    REQUIRE(local.size() == 1);
    REQUIRE(local[0].ratio > 0.0);
    REQUIRE(global[0].maximal_l2 > local[0].maximal_l2);
    REQUIRE(global[0].hs_norm == local[0].hs_norm);

    const auto small = GridSpec::periodic(1.5, 64);
    const ScanMember tiny{gaussian_spectrum(dual_spectral_grid(small)), TimeGrid::geometric(2)};
    REQUIRE_THROWS_AS(strong_ratio_scan({tiny}, 0.5, 2.0, 0.1, ScanDomain::local_unit_ball), dlab::invalid_argument);
}
