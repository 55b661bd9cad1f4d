#pragma once

#include <cmath>

namespace dlab {

/// C^infinity step: 0 for u <= 0, 1 for u >= 1, built from exp(-1/u).
inline double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double p = std::exp(-1.0 / u);
    const double q = std::exp(-1.0 / (1.0 - u));
    return p / (p + q);
}

/// The bump functions used by truncations and dyadic decompositions.
///
///   chi : 1 on |xi| <= 1, 0 on |xi| >= 2 (low-frequency cutoff)
///   eta : chi(xi/2) - chi(xi), supported in 1 <= |xi| <= 4, so that
///         chi(xi) + sum_{M = 1,2,4,...} eta(xi/M) = 1 telescopes exactly
///   mu  : 1 on |xi| <= 1/2, 0 on |xi| >= 1 (even global bump; also the
///         plateau profile for spatial/frequency truncation at scale N)
///
/// All three are radially non-increasing away from their plateaus, even, and
/// take values in [0,1].
struct CutoffFamily {
    double chi(double xi) const { return smooth_step(2.0 - std::abs(xi)); }
    double eta(double xi) const { return chi(0.5 * xi) - chi(xi); }
    double mu(double xi) const { return chi(2.0 * xi); }

    static constexpr double chi_plateau = 1.0;
    static constexpr double chi_support = 2.0;
    static constexpr double eta_inner = 1.0;
    static constexpr double eta_outer = 4.0;
    static constexpr double mu_plateau = 0.5;
    static constexpr double mu_support = 1.0;
};

}  // namespace dlab
