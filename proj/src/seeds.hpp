#pragma once

// Internal helpers for deterministic multistart seeding. Smooth random
// fields are low-mode eigen expansions with decaying random coefficients,
// reproducible from (seed, branch).

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "groundstate/operators.hpp"
#include "groundstate/spectral.hpp"

namespace groundstate::detail {

inline double unit_symmetric(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline std::mt19937_64 branch_rng(unsigned seed, unsigned branch) {
    std::seed_seq seq{0x67726e64u, seed, branch};
    return std::mt19937_64(seq);
}

// Low-mode expansion over the first `modes` basis fields with 1/(1+k)^2
// decay, normalized to unit max; optional random constant offset (Neumann).
inline Field smooth_random(const SpectralBasis& basis, std::mt19937_64& rng, int modes,
                           double offset_range = 0.0) {
    Field out = basis.eigenfield(0);
    fill(out, 0.0);
    const int m = std::min(modes, basis.count());
    for (int k = 0; k < m; ++k) {
        const double a = unit_symmetric(rng) / ((1.0 + k) * (1.0 + k));
        axpy(out, a, basis.eigenfield(k));
    }
    const double mx = max_abs(out);
    if (mx > 0) scale(out, 1.0 / mx);
    if (offset_range > 0.0 && basis.boundary() == Boundary::Neumann) {
        const double c = offset_range * unit_symmetric(rng);
        for (double& v : out.values()) v += c;
    }
    return out;
}

// Smooth nonnegative bump centered at the given per-axis fractions of the
// box, with radius a fraction of the smallest side.
inline Field bump(const GridPtr& grid, const std::array<double, max_dimension>& center_frac,
                  double radius_frac) {
    Field f(grid);
    const int dim = grid->dimension();
    double min_side = grid->domain().side_length(0);
    for (int a = 1; a < dim; ++a) min_side = std::min(min_side, grid->domain().side_length(a));
    const double rho = radius_frac * min_side;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double d = grid->coordinate(i, a)
                           - center_frac[static_cast<std::size_t>(a)] * grid->domain().side_length(a);
            r2 += d * d;
        }
        const double s = r2 / (rho * rho);
        f[i] = s < 1.0 ? (1.0 - s) * (1.0 - s) : 0.0;
    }
    if (grid->boundary() == Boundary::Dirichlet) dirichlet_project(f);
    return f;
}

inline void take_abs(Field& f) {
    for (double& v : f.values()) v = std::abs(v);
}

inline Field positive_part(const Field& f) {
    Field out = f;
    for (double& v : out.values()) v = std::max(v, 0.0);
    return out;
}

inline Field negative_part(const Field& f) {
    Field out = f;
    for (double& v : out.values()) v = std::max(-v, 0.0);
    return out;
}

} // namespace groundstate::detail
