#pragma once

// JSON encodings of the core containers:
//   GridFunction / SpectrumFunction: {"x0":..., "dx":..., "re":[...], "im":[...]}
//   DiscreteMeasure:                 {"atoms":[{"x":..., "w":...}, ...]}
// A SpectrumFunction stores its xi0/dxi under the same "x0"/"dx" keys.

#include <dlab/core.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace dlab {

namespace detail {

inline nlohmann::json samples_to_json(double x0, double dx, const std::vector<cplx>& v) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    return {{"x0", x0}, {"dx", dx}, {"re", re}, {"im", im}};
}

inline void samples_from_json(const nlohmann::json& j, double& x0, double& dx, std::vector<cplx>& v) {
    try {
        x0 = j.at("x0").get<double>();
        dx = j.at("dx").get<double>();
        const auto re = j.at("re").get<std::vector<double>>();
        std::vector<double> im(re.size(), 0.0);
        if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
        require(re.size() == im.size(), "JSON samples: re/im length mismatch");
        v.resize(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument(std::string("JSON samples: ") + e.what());
    }
}

}  // namespace detail

inline nlohmann::json to_json(const GridFunction& f) {
    return detail::samples_to_json(f.grid.x0, f.grid.dx, f.values);
}

inline nlohmann::json to_json(const SpectrumFunction& g) {
    return detail::samples_to_json(g.grid.xi0, g.grid.dxi, g.values);
}

inline nlohmann::json to_json(const DiscreteMeasure& mu) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : mu.atoms) atoms.push_back({{"x", a.x}, {"w", a.w}});
    return {{"atoms", atoms}};
}

inline GridFunction grid_function_from_json(const nlohmann::json& j) {
    double x0 = 0, dx = 0;
    std::vector<cplx> v;
    detail::samples_from_json(j, x0, dx, v);
    require(!v.empty(), "GridFunction JSON: empty values");
    return {GridSpec{x0, dx, v.size()}, std::move(v)};
}

inline SpectrumFunction spectrum_function_from_json(const nlohmann::json& j) {
    double xi0 = 0, dxi = 0;
    std::vector<cplx> v;
    detail::samples_from_json(j, xi0, dxi, v);
    require(!v.empty(), "SpectrumFunction JSON: empty values");
    return {SpectralGrid{xi0, dxi, v.size()}, std::move(v)};
}

inline DiscreteMeasure measure_from_json(const nlohmann::json& j) {
    DiscreteMeasure mu;
    try {
        for (const auto& a : j.at("atoms")) mu.atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument(std::string("DiscreteMeasure JSON: ") + e.what());
    }
    mu.validate();
    return mu;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_argument("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace dlab
