#include <doctest.h>

#include <cmath>
#include <random>

#include "groundstate/domain.hpp"
#include "groundstate/io.hpp"
#include "oracles.hpp"

using namespace groundstate;

namespace {

GridPtr unit_interval(int n, Boundary bc = Boundary::Neumann) {
    return Grid::create(DomainSpec({1.0}, bc), {n});
}

Field random_field(GridPtr g, unsigned seed) {
    std::mt19937_64 rng(seed);
    Field f(std::move(g));
    for (double& v : f.values()) v = oracles::uniform_pm1(rng);
    return f;
}

} // namespace

TEST_CASE("trapezoid weights on the unit interval") {
    auto g = unit_interval(5);
    auto w = g->quad_weights();
    REQUIRE(w.size() == 5);
    CHECK(w[0] == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w[3] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w[4] == doctest::Approx(0.125).epsilon(1e-15));
    double sum = 0.0;
    for (double x : w) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("weight sums equal the volume") {
    auto square = Grid::create(DomainSpec({1.0, 1.0}, Boundary::Neumann), {3, 3});
    double sum = 0.0;
    for (double x : square->quad_weights()) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    auto box = Grid::create(DomainSpec({2.0, 3.0}, Boundary::Neumann), {17, 9});
    sum = 0.0;
    for (double x : box->quad_weights()) sum += x;
    CHECK(sum == doctest::Approx(6.0).epsilon(1e-14));
    for (double x : box->quad_weights()) CHECK(x > 0.0);
}

TEST_CASE("grid construction guards") {
    CHECK_THROWS_AS(Grid::create(DomainSpec({1.0}, Boundary::Neumann), {2}),
                    invalid_resolution_error);
    CHECK_THROWS_AS((DomainSpec{{1.0, -2.0}, Boundary::Neumann}), precondition_error);
    CHECK_THROWS_AS((DomainSpec{{1, 1, 1, 1, 1}, Boundary::Neumann}), precondition_error);
    // 4D memory guard: 35^4 > 33^4 default cap
    CHECK_THROWS_AS(Grid::create(DomainSpec({1, 1, 1, 1}, Boundary::Neumann), {35, 35, 35, 35}),
                    invalid_resolution_error);
    GridLimits wide;
    wide.max_nodes_4d = 40ull * 40 * 40 * 40;
    CHECK_NOTHROW(Grid::create(DomainSpec({1, 1, 1, 1}, Boundary::Neumann), {5, 5, 5, 35}, wide));
}

TEST_CASE("integration is exact on constants") {
    auto g = Grid::create(DomainSpec({2.0, 3.0}, Boundary::Neumann), {11, 7});
    Field f(g, 2.5);
    CHECK(integrate(f) == doctest::Approx(2.5 * 6.0).epsilon(1e-14));
}

TEST_CASE("integration of cos(pi x) vanishes by symmetry") {
    auto g = unit_interval(65);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::cos(std::numbers::pi * g->coordinate(i, 0));
    CHECK(std::abs(integrate(f)) < 1e-10);
}

TEST_CASE("trapezoid error oracle for x^2 on [0,1]") {
    // Composite trapezoid applied to x^2 carries the exact error +h^2/6.
    auto g = unit_interval(65);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g->coordinate(i, 0);
        f[i] = x * x;
    }
    const double h = 1.0 / 64.0;
    const double expected = 1.0 / 3.0 + h * h / 6.0;
    CHECK(integrate(f) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::abs(integrate(f) - 1.0 / 3.0) < 5e-5);
}

TEST_CASE("lp_norm of constants and homogeneity") {
    auto g = Grid::create(DomainSpec({2.0, 3.0}, Boundary::Neumann), {9, 9});
    Field c(g, -1.5);
    CHECK(lp_norm(c, 4.0) == doctest::Approx(1.5 * std::pow(6.0, 0.25)).epsilon(1e-14));

    Field f = random_field(g, 17);
    const double n1 = lp_norm(f, 3.0);
    scale(f, -2.5);
    CHECK(lp_norm(f, 3.0) == doctest::Approx(2.5 * n1).epsilon(1e-14));
}

TEST_CASE("overlap symmetry, zero case and Cauchy-Schwarz") {
    auto g = unit_interval(33);
    Field u = random_field(g, 3);
    Field v = random_field(g, 4);
    Field zero(g, 0.0);
    CHECK(overlap(u, zero) == 0.0);
    CHECK(overlap(u, v) == doctest::Approx(overlap(v, u)).epsilon(1e-15));
    const double lhs = overlap(u, v);
    const double rhs = std::pow(lp_norm(u, 4.0), 2) * std::pow(lp_norm(v, 4.0), 2);
    CHECK(lhs <= rhs * (1.0 + 1e-14));
}

TEST_CASE("l2_inner is symmetric bitwise under one summation order") {
    auto g = unit_interval(101);
    Field f = random_field(g, 5);
    Field h = random_field(g, 6);
    CHECK(l2_inner(f, h) == l2_inner(h, f));
    Field other = random_field(unit_interval(51), 7);
    CHECK_THROWS_AS((void)l2_inner(f, other), grid_mismatch_error);
}

TEST_CASE("field dump round trip") {
    auto g = Grid::create(DomainSpec({1.0, 2.0}, Boundary::Dirichlet), {5, 9});
    Field f = random_field(g, 11);
    const std::string data = "test_field.f64";
    const std::string meta = "test_field.json";
    write_field(f, data, meta);
    Field back = read_field(data, meta);
    REQUIRE(back.size() == f.size());
    CHECK(back.grid().boundary() == Boundary::Dirichlet);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
    std::remove(data.c_str());
    std::remove(meta.c_str());
}
