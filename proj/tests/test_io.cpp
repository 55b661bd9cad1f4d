#include <catch_amalgamated.hpp>

#include <dlab/io.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dlab;

TEST_CASE("grid functions round-trip through JSON", "[io]") {
    const auto f = GridFunction::sample(GridSpec::periodic(4.0, 8), [](double x) { return cplx(x, -2.0 * x); });
    const auto back = grid_function_from_json(nlohmann::json::parse(to_json(f).dump()));
    REQUIRE(back.grid.x0 == f.grid.x0);
    REQUIRE(back.grid.dx == f.grid.dx);
    REQUIRE(back.values == f.values);
}

TEST_CASE("spectra and measures round-trip through JSON", "[io]") {
    const SpectrumFunction g(SpectralGrid{-1.0, 0.5, 3}, {1.0, cplx(0.0, 2.0), 3.0});
    const auto gb = spectrum_function_from_json(to_json(g));
    REQUIRE(gb.grid.xi0 == -1.0);
    REQUIRE(gb.values == g.values);
    const DiscreteMeasure mu{{{0.1, 0.5}, {0.3, 0.25}}};
    const auto mb = measure_from_json(to_json(mu));
    REQUIRE(mb.atoms.size() == 2);
    REQUIRE(mb.atoms[1].x == 0.3);
}

TEST_CASE("imaginary parts default to zero", "[io]") {
    const auto j = nlohmann::json::parse(R"({"x0": 0, "dx": 0.5, "re": [1, 2]})");
    const auto f = grid_function_from_json(j);
    REQUIRE(f.values[1] == cplx(2.0, 0.0));
}

TEST_CASE("malformed JSON is reported as invalid input", "[io]") {
    REQUIRE_THROWS_AS(grid_function_from_json(nlohmann::json::parse(R"({"x0": 0})")), dlab::invalid_argument);
    REQUIRE_THROWS_AS(grid_function_from_json(nlohmann::json::parse(R"({"x0": 0, "dx": 1, "re": [1], "im": [1, 2]})")),
                      dlab::invalid_argument);
    REQUIRE_THROWS_AS(grid_function_from_json(nlohmann::json::parse(R"({"x0": 0, "dx": -1, "re": [1]})")),
                      dlab::invalid_argument);
    REQUIRE_THROWS_AS(measure_from_json(nlohmann::json::parse(R"({"atoms": [{"x": 0.1, "w": -1}]})")),
                      dlab::invalid_argument);
    REQUIRE_THROWS_AS(read_json_file("/nonexistent/file.json"), dlab::invalid_argument);

    const auto path = std::filesystem::temp_directory_path() / "dlab_io_bad.json";
    std::ofstream(path) << "{ not json";
    REQUIRE_THROWS_AS(read_json_file(path.string()), dlab::invalid_argument);
    std::filesystem::remove(path);
}
