#include "groundstate/operators.hpp"

#include <cmath>

namespace groundstate {

Field laplacian_apply(const Field& f) {
    const Grid& g = f.grid();
    const int dim = g.dimension();
    const bool dirichlet = g.boundary() == Boundary::Dirichlet;
    Field out(f.grid_ptr());
    auto src = f.values();
    auto dst = out.values();
    const std::size_t count = g.node_count();

    for (int a = 0; a < dim; ++a) {
        const std::size_t stride = g.stride(a);
        const int n = g.nodes_per_axis()[static_cast<std::size_t>(a)];
        const double h = g.spacing()[static_cast<std::size_t>(a)];
        const double inv_h2 = 1.0 / (h * h);
        for (std::size_t i = 0; i < count; ++i) {
            const int j = g.axis_index(i, a);
            double left, right;
            if (j == 0) {
                left = dirichlet ? 0.0 : src[i + stride]; // reflected ghost
                right = src[i + stride];
            } else if (j == n - 1) {
                left = src[i - stride];
                right = dirichlet ? 0.0 : src[i - stride];
            } else {
                left = src[i - stride];
                right = src[i + stride];
            }
            dst[i] += (2.0 * src[i] - left - right) * inv_h2;
        }
    }
    if (dirichlet) {
        for (std::size_t i = 0; i < count; ++i)
            if (g.is_boundary_node(i)) dst[i] = 0.0;
    }
    return out;
}

void dirichlet_project(Field& f) {
    const Grid& g = f.grid();
    if (g.boundary() != Boundary::Dirichlet) return;
    auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (g.is_boundary_node(i)) v[i] = 0.0;
}

double bilinear_B(const Field& f, const Field& g, double lambda) {
    require_same_grid(f, g);
    return l2_inner(laplacian_apply(f), g) + lambda * l2_inner(f, g);
}

double energy(const Pair& p, const SystemParams& params) {
    const double quad = 0.5 * bilinear_B(p.u, p.u, params.lambda1)
                      + 0.5 * bilinear_B(p.v, p.v, params.lambda2);
    const double q1 = std::pow(lp_norm(p.u, 4.0), 4);
    const double q2 = std::pow(lp_norm(p.v, 4.0), 4);
    const double ov = overlap(p.u, p.v);
    return quad - 0.25 * (q1 + 2.0 * params.beta * ov + q2);
}

Pair residual(const Pair& p, const SystemParams& params) {
    Field ru = laplacian_apply(p.u);
    Field rv = laplacian_apply(p.v);
    auto u = p.u.values();
    auto v = p.v.values();
    auto a = ru.values();
    auto b = rv.values();
    const double l1 = params.lambda1, l2 = params.lambda2, beta = params.beta;
    for (std::size_t i = 0; i < u.size(); ++i) {
        a[i] += l1 * u[i] - u[i] * u[i] * u[i] - beta * u[i] * v[i] * v[i];
        b[i] += l2 * v[i] - v[i] * v[i] * v[i] - beta * u[i] * u[i] * v[i];
    }
    Pair r(std::move(ru), std::move(rv));
    if (p.grid().boundary() == Boundary::Dirichlet) {
        dirichlet_project(r.u);
        dirichlet_project(r.v);
    }
    return r;
}

Pair hessian_apply(const Pair& p, const Pair& dir, const SystemParams& params) {
    require_same_grid(p.u, dir.u);
    Field hu = laplacian_apply(dir.u);
    Field hv = laplacian_apply(dir.v);
    auto u = p.u.values();
    auto v = p.v.values();
    auto du = dir.u.values();
    auto dv = dir.v.values();
    auto a = hu.values();
    auto b = hv.values();
    const double l1 = params.lambda1, l2 = params.lambda2, beta = params.beta;
    for (std::size_t i = 0; i < u.size(); ++i) {
        a[i] += (l1 - 3.0 * u[i] * u[i] - beta * v[i] * v[i]) * du[i] - 2.0 * beta * u[i] * v[i] * dv[i];
        b[i] += (l2 - 3.0 * v[i] * v[i] - beta * u[i] * u[i]) * dv[i] - 2.0 * beta * u[i] * v[i] * du[i];
    }
    Pair h(std::move(hu), std::move(hv));
    if (p.grid().boundary() == Boundary::Dirichlet) {
        dirichlet_project(h.u);
        dirichlet_project(h.v);
    }
    return h;
}

double residual_scale(const Field& z, double lambda) {
    const double m = max_abs(z);
    return 1.0 + std::abs(lambda) * m + m * m * m;
}

double residual_scale(const Pair& p, const SystemParams& params) {
    const double mu = max_abs(p.u);
    const double mv = max_abs(p.v);
    const double ab = std::abs(params.beta);
    return 1.0 + std::abs(params.lambda1) * mu + mu * mu * mu + ab * mu * mv * mv
               + std::abs(params.lambda2) * mv + mv * mv * mv + ab * mu * mu * mv;
}

} // namespace groundstate
