#include <doctest.h>

#include <cmath>
#include <random>

#include "groundstate/operators.hpp"
#include "groundstate/spectral.hpp"
#include "oracles.hpp"

using namespace groundstate;

namespace {

GridPtr interval(int n, Boundary bc = Boundary::Neumann) {
    return Grid::create(DomainSpec({1.0}, bc), {n});
}

Field random_field(GridPtr g, unsigned seed) {
    std::mt19937_64 rng(seed);
    Field f(std::move(g));
    for (double& v : f.values()) v = oracles::uniform_pm1(rng);
    return f;
}

Field smooth_random_field(const GridPtr& g, unsigned seed) {
    Field f = random_field(g, seed);
    Field s = precondition(f, 1.0);
    const double m = max_abs(s);
    if (m > 0) scale(s, 1.0 / m);
    if (g->boundary() == Boundary::Dirichlet) dirichlet_project(s);
    return s;
}

} // namespace

TEST_CASE("Neumann Laplacian annihilates constants") {
    Field c(interval(17), 3.0);
    Field out = laplacian_apply(c);
    CHECK(max_abs(out) == 0.0);
}

TEST_CASE("cos mode is a stencil eigenfield (Neumann 1D)") {
    const int n = 33;
    auto g = interval(n);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::cos(std::numbers::pi * g->coordinate(i, 0));
    const double mu = oracles::stencil_symbol(1, n, 1.0);
    Field lf = laplacian_apply(f);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(lf[i] == doctest::Approx(mu * f[i]).epsilon(1e-10));
}

TEST_CASE("sin mode is a stencil eigenfield (Dirichlet 1D)") {
    const int n = 33;
    auto g = interval(n, Boundary::Dirichlet);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::sin(std::numbers::pi * g->coordinate(i, 0));
    const double mu = oracles::stencil_symbol(1, n, 1.0);
    Field lf = laplacian_apply(f);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(lf[i] == doctest::Approx(mu * f[i]).epsilon(1e-10));
}

TEST_CASE("bilinear form on constants and eigenfields") {
    auto g = Grid::create(DomainSpec({2.0}, Boundary::Neumann), {41});
    Field c(g, 1.5);
    const double lambda = 0.7;
    CHECK(bilinear_B(c, c, lambda) == doctest::Approx(lambda * 1.5 * 1.5 * 2.0).epsilon(1e-14));

    auto basis = eigenbasis(g, 5);
    Field phi = basis.eigenfield(3);
    CHECK(bilinear_B(phi, phi, lambda) == doctest::Approx(basis.eigenvalue(3) + lambda).epsilon(1e-12));
}

TEST_CASE("gradient form is positive semidefinite and symmetric") {
    auto g = interval(29);
    Field f = random_field(g, 21);
    Field h = random_field(g, 22);
    CHECK(bilinear_B(f, f, 0.0) >= 0.0);
    const double a = l2_inner(laplacian_apply(f), h);
    const double b = l2_inner(f, laplacian_apply(h));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(bilinear_B(f, h, 0.0) == doctest::Approx(a).epsilon(1e-14));
}

TEST_CASE("summation by parts holds in 2D with mixed boundaries") {
    for (Boundary bc : {Boundary::Neumann, Boundary::Dirichlet}) {
        auto g = Grid::create(DomainSpec({1.0, 1.5}, bc), {13, 17});
        Field f = smooth_random_field(g, 31);
        Field h = smooth_random_field(g, 32);
        const double a = l2_inner(laplacian_apply(f), h);
        const double b = l2_inner(f, laplacian_apply(h));
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("energy basics") {
    auto g = interval(41);
    SystemParams prm{2.0, 2.0, 0.5};
    Pair zero{Field(g), Field(g)};
    CHECK(energy(zero, prm) == 0.0);

    // Fully nontrivial constants at (2,2,1/2): c1^2 = c2^2 = 4/3 and the
    // closed-form level (l1^2 - 2 b l1 l2 + l2^2) |O| / (4 (1-b^2)) = 4/3.
    const double c = std::sqrt(4.0 / 3.0);
    Pair constants{Field(g, c), Field(g, c)};
    CHECK(energy(constants, prm) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

    // beta = 0 decouples into the two scalar energies.
    Field u = smooth_random_field(g, 41);
    Field v = smooth_random_field(g, 42);
    SystemParams decoupled{1.2, -0.4, 0.0};
    const double eu = 0.5 * bilinear_B(u, u, 1.2) - 0.25 * std::pow(lp_norm(u, 4.0), 4);
    const double ev = 0.5 * bilinear_B(v, v, -0.4) - 0.25 * std::pow(lp_norm(v, 4.0), 4);
    CHECK(energy({u, v}, decoupled) == doctest::Approx(eu + ev).epsilon(1e-12));

    // Exchange symmetry at lambda1 = lambda2.
    SystemParams sym{0.8, 0.8, -1.3};
    CHECK(energy({u, v}, sym) == doctest::Approx(energy({v, u}, sym)).epsilon(1e-15));
}

TEST_CASE("residual vanishes on constant solutions") {
    auto g = interval(33);
    SystemParams prm{2.0, 2.0, 0.5};
    const double c = std::sqrt(4.0 / 3.0);
    Pair constants{Field(g, c), Field(g, c)};
    Pair r = residual(constants, prm);
    CHECK(max_abs(r.u) < 1e-12);
    CHECK(max_abs(r.v) < 1e-12);

    SystemParams prm2{3.0, -1.0, 0.2};
    Pair semi{Field(g, std::sqrt(3.0)), Field(g, 0.0)};
    Pair r2 = residual(semi, prm2);
    CHECK(max_abs(r2.u) < 1e-12);
    CHECK(max_abs(r2.v) == 0.0);

    Pair zero{Field(g), Field(g)};
    Pair r3 = residual(zero, prm);
    CHECK(max_abs(r3.u) == 0.0);
    CHECK(max_abs(r3.v) == 0.0);
}

TEST_CASE("residual is the energy slope (central-difference oracle)") {
    for (int dim = 1; dim <= 2; ++dim) {
        auto g = dim == 1 ? interval(65)
                          : Grid::create(DomainSpec({1.0, 1.0}, Boundary::Neumann), {33, 33});
        SystemParams prm{1.5, -0.5, 0.8};
        for (unsigned trial = 0; trial < 3; ++trial) {
            Pair p{smooth_random_field(g, 100 + trial), smooth_random_field(g, 200 + trial)};
            Pair d{smooth_random_field(g, 300 + trial), smooth_random_field(g, 400 + trial)};
            Pair r = residual(p, prm);
            const double slope = l2_inner(r.u, d.u) + l2_inner(r.v, d.v);
            auto energy_at = [&](double t) {
                Pair q{sum_scaled(p.u, 1.0, d.u, t), sum_scaled(p.v, 1.0, d.v, t)};
                return energy(q, prm);
            };
            const double fd4 = oracles::central_difference(energy_at, 1e-4);
            CHECK(std::abs(fd4 - slope) < 1e-6 * (1.0 + std::abs(slope)));
            const double err3 = std::abs(oracles::central_difference(energy_at, 1e-3) - slope);
            const double err4 = std::abs(fd4 - slope);
            if (err4 > 1e-14) {
                const double ratio = err3 / err4;
                CHECK(ratio > 50.0);
                CHECK(ratio < 200.0);
            }
        }
    }
}

TEST_CASE("hessian at the origin is the shifted Laplacian") {
    auto g = interval(21);
    SystemParams prm{1.1, 2.2, -0.7};
    Pair zero{Field(g), Field(g)};
    Pair d{random_field(g, 51), random_field(g, 52)};
    Pair h = hessian_apply(zero, d, prm);
    Field expected_u = laplacian_apply(d.u);
    axpy(expected_u, prm.lambda1, d.u);
    Field expected_v = laplacian_apply(d.v);
    axpy(expected_v, prm.lambda2, d.v);
    for (std::size_t i = 0; i < h.u.size(); ++i) {
        CHECK(h.u[i] == doctest::Approx(expected_u[i]).epsilon(1e-13));
        CHECK(h.v[i] == doctest::Approx(expected_v[i]).epsilon(1e-13));
    }
}

TEST_CASE("hessian symmetry and finite-difference consistency") {
    auto g = interval(49);
    SystemParams prm{0.9, -1.4, 1.7};
    Pair p{smooth_random_field(g, 61), smooth_random_field(g, 62)};
    Pair d1{smooth_random_field(g, 63), smooth_random_field(g, 64)};
    Pair d2{smooth_random_field(g, 65), smooth_random_field(g, 66)};

    Pair h1 = hessian_apply(p, d1, prm);
    Pair h2 = hessian_apply(p, d2, prm);
    const double a = l2_inner(h1.u, d2.u) + l2_inner(h1.v, d2.v);
    const double b = l2_inner(h2.u, d1.u) + l2_inner(h2.v, d1.v);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));

    // (residual(p + t d) - residual(p - t d)) / (2t) vs hessian_apply(p, d).
    const double delta = 1e-5;
    Pair plus{sum_scaled(p.u, 1.0, d1.u, delta), sum_scaled(p.v, 1.0, d1.v, delta)};
    Pair minus{sum_scaled(p.u, 1.0, d1.u, -delta), sum_scaled(p.v, 1.0, d1.v, -delta)};
    Pair rp = residual(plus, prm);
    Pair rm = residual(minus, prm);
    double max_err = 0.0, max_ref = 0.0;
    for (std::size_t i = 0; i < h1.u.size(); ++i) {
        max_err = std::max(max_err, std::abs((rp.u[i] - rm.u[i]) / (2 * delta) - h1.u[i]));
        max_err = std::max(max_err, std::abs((rp.v[i] - rm.v[i]) / (2 * delta) - h1.v[i]));
        max_ref = std::max({max_ref, std::abs(h1.u[i]), std::abs(h1.v[i])});
    }
    CHECK(max_err < 1e-6 * (1.0 + max_ref));
}

TEST_CASE("directional derivative error decays as O(delta^2)") {
    auto g = interval(65);
    SystemParams prm{1.0, 1.0, -2.0};
    Pair p{smooth_random_field(g, 71), smooth_random_field(g, 72)};
    Pair d{smooth_random_field(g, 73), smooth_random_field(g, 74)};
    const double norm = std::sqrt(l2_inner(d.u, d.u) + l2_inner(d.v, d.v));
    scale(d.u, 1.0 / norm);
    scale(d.v, 1.0 / norm);
    Pair r = residual(p, prm);
    const double slope = l2_inner(r.u, d.u) + l2_inner(r.v, d.v);
    auto energy_at = [&](double t) {
        Pair q{sum_scaled(p.u, 1.0, d.u, t), sum_scaled(p.v, 1.0, d.v, t)};
        return energy(q, prm);
    };
    const double e3 = std::abs(oracles::central_difference(energy_at, 1e-3) - slope);
    const double e4 = std::abs(oracles::central_difference(energy_at, 1e-4) - slope);
    CHECK(e4 < 1e-6);
    CHECK(e4 < e3);
}
