#pragma once

// Independent oracles used by the test suites. Everything here must stay
// decoupled from the implementation paths it checks: quadrature by adaptive
// Simpson, derivatives by central differences, stencil symbols from the
// classical 1D analysis.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace oracles {

// Adaptive Simpson on [a,b] to absolute tolerance tol.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 48) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// int_0^1 (1-r)^q r^(N-1) dr by quadrature (Beta-function oracle).
inline double beta_integral(int N, double q, double tol = 1e-13) {
    return adaptive_simpson([N, q](double r) {
        return std::pow(1.0 - r, q) * std::pow(r, N - 1);
    }, 0.0, 1.0, tol);
}

// Surface area of the unit sphere in R^N.
inline double sphere_area(int N) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

// Discrete 1D stencil symbol on n nodes spanning [0,L]: mode k of the
// second-order three-point -Laplacian.
inline double stencil_symbol(int k, int n, double L) {
    const double h = L / (n - 1);
    return (2.0 / (h * h)) * (1.0 - std::cos(k * std::numbers::pi * h / L));
}

// Central difference of a scalar function along a scalar parameter.
inline double central_difference(const std::function<double(double)>& f, double delta) {
    return (f(delta) - f(-delta)) / (2.0 * delta);
}

// Deterministic uniform in [-1,1] from a raw 64-bit generator.
inline double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace oracles
