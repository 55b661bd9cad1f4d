#pragma once

#include <dlab/core.hpp>

#include <cmath>

namespace testing_helpers {

using dlab::cplx;
using dlab::pi;

/// f(x) = exp(-x^2/(4b)) has fhat(xi) = sqrt(b/pi) exp(-b xi^2) under the library convention.
inline dlab::SpectrumFunction gaussian_spectrum(const dlab::SpectralGrid& sg, double b = 0.25) {
    return dlab::SpectrumFunction::sample(sg, [b](double xi) { return std::sqrt(b / pi) * std::exp(-b * xi * xi); });
}

/// Largest |u - v| / max|v| over the grid.
inline double relative_sup_error(const dlab::GridFunction& u, const dlab::GridFunction& v) {
    return dlab::max_abs_difference(u, v) / dlab::sup_norm(v);
}

}  // namespace testing_helpers
