#include "groundstate/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "groundstate/parallel.hpp"
#include "groundstate/regimes.hpp"
#include "seeds.hpp"

namespace groundstate {

namespace {
constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();
}

void ScalarSolveOptions::validate() const {
    if (!(residual_tol > 0) || !(newton_tol > 0) || !(armijo_slope > 0)
        || !(armijo_factor > 0 && armijo_factor < 1))
        throw precondition_error("scalar solve tolerances must be positive");
    if (max_outer_iters < 1 || multistart < 1 || newton_max_iters < 1 || basis_count < 1)
        throw precondition_error("scalar solve iteration counts must be positive");
}

double scalar_energy(const Field& z, double lambda) {
    const double q = lp_norm(z, 4.0);
    return 0.5 * bilinear_B(z, z, lambda) - 0.25 * q * q * q * q;
}

Field scalar_residual(const Field& z, double lambda) {
    Field r = laplacian_apply(z);
    auto zv = z.values();
    auto rv = r.values();
    for (std::size_t i = 0; i < zv.size(); ++i)
        rv[i] += lambda * zv[i] - zv[i] * zv[i] * zv[i];
    if (z.grid().boundary() == Boundary::Dirichlet) dirichlet_project(r);
    return r;
}

Field scalar_nehari_project(const Field& z, double lambda) {
    const double q4 = lp_norm(z, 4.0);
    if (!(q4 > 0)) throw not_in_cone_error("Nehari projection of the zero field");
    const double B = bilinear_B(z, z, lambda);
    if (!(B > 0))
        throw not_in_cone_error("B(z,z,lambda) <= 0: field outside the Nehari cone");
    Field out = z;
    scale(out, std::sqrt(B) / (q4 * q4));
    return out;
}

namespace {

Field scalar_hessian_apply(const Field& z, const Field& d, double lambda) {
    Field h = laplacian_apply(d);
    auto zv = z.values();
    auto dv = d.values();
    auto hv = h.values();
    for (std::size_t i = 0; i < zv.size(); ++i)
        hv[i] += (lambda - 3.0 * zv[i] * zv[i]) * dv[i];
    if (z.grid().boundary() == Boundary::Dirichlet) dirichlet_project(h);
    return h;
}

struct BranchOutcome {
    Field z;
    double level = 0.0;
    double res_inf = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool inner_failure = false;
    int iterations = 0;
};

// Truncated Newton polish: preconditioned CG on the Hessian with a
// negative-curvature bailout, backtracking on the squared residual norm.
void newton_polish(Field& z, double lambda, const SpectralTransform& transform, double shift,
                   double target_inf, int max_newton) {
    const bool dirichlet = z.grid().boundary() == Boundary::Dirichlet;
    auto apply_M = [&](const Field& f) {
        Field g = transform.solve_shifted(f, shift);
        if (dirichlet) dirichlet_project(g);
        return g;
    };
    for (int it = 0; it < max_newton; ++it) {
        Field r = scalar_residual(z, lambda);
        const double res = max_abs(r);
        if (res < target_inf) return;
        // PCG on H delta = r.
        Field x(z.grid_ptr());
        Field res_cg = r;
        Field y = apply_M(res_cg);
        Field p = y;
        double rho = l2_inner(res_cg, y);
        const double rr0 = l2_inner(res_cg, res_cg);
        bool have_dir = false;
        for (int k = 0; k < 64; ++k) {
            Field q = scalar_hessian_apply(z, p, lambda);
            const double pq = l2_inner(p, q);
            if (pq <= 1e-14 * l2_inner(p, p)) break; // negative curvature
            const double alpha = rho / pq;
            axpy(x, alpha, p);
            have_dir = true;
            axpy(res_cg, -alpha, q);
            const double rr = l2_inner(res_cg, res_cg);
            if (rr < 1e-8 * rr0) break;
            y = apply_M(res_cg);
            const double rho_new = l2_inner(res_cg, y);
            const double beta_cg = rho_new / rho;
            rho = rho_new;
            Field pn = y;
            axpy(pn, beta_cg, p);
            p = pn;
        }
        Field dir = have_dir ? x : apply_M(r);
        const double merit0 = l2_inner(r, r);
        double step = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 25; ++ls) {
            Field trial = sum_scaled(z, 1.0, dir, -step);
            if (dirichlet) dirichlet_project(trial);
            Field rt = scalar_residual(trial, lambda);
            if (l2_inner(rt, rt) < merit0 * (1.0 - 1e-4 * step)) {
                z = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return;
    }
}

BranchOutcome descend_definite(Field z, double lambda, const SpectralTransform& transform,
                               const ScalarSolveOptions& opts) {
    const bool dirichlet = z.grid().boundary() == Boundary::Dirichlet;
    const double shift = lambda > 0 ? lambda : 1.0;
    BranchOutcome out{Field(z.grid_ptr()), 0.0, std::numeric_limits<double>::infinity(), false,
                      false, 0};
    if (!(lp_norm(z, 4.0) > 0)) return out;
    z = scalar_nehari_project(z, lambda);
    double alpha = 1.0;
    double value = scalar_energy(z, lambda);
    int it = 0;
    for (; it < opts.max_outer_iters; ++it) {
        Field r = scalar_residual(z, lambda);
        const double res = max_abs(r);
        const double tol = opts.residual_tol * residual_scale(z, lambda);
        if (res < tol) {
            out.converged = true;
            break;
        }
        Field g = transform.solve_shifted(r, shift);
        if (dirichlet) dirichlet_project(g);
        const double slope = -l2_inner(r, g);
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            Field trial = sum_scaled(z, 1.0, g, -alpha);
            if (dirichlet) dirichlet_project(trial);
            if (!(lp_norm(trial, 4.0) > 0)) {
                alpha *= opts.armijo_factor;
                continue;
            }
            trial = scalar_nehari_project(trial, lambda);
            const double tv = scalar_energy(trial, lambda);
            if (tv <= value + opts.armijo_slope * alpha * slope) {
                z = std::move(trial);
                value = tv;
                accepted = true;
                break;
            }
            alpha *= opts.armijo_factor;
        }
        if (!accepted) break; // stalled at line-search resolution
        alpha = std::min(alpha * 2.0, 16.0);
    }
    if (!out.converged && opts.newton_polish) {
        newton_polish(z, lambda, transform, shift, 0.1 * opts.residual_tol * residual_scale(z, lambda),
                      30);
        const double res = max_abs(scalar_residual(z, lambda));
        out.converged = res < opts.residual_tol * residual_scale(z, lambda);
    }
    // The scalar equation is odd: normalize the sign so that max z > 0.
    if (max_value(z) < -min_value(z)) scale(z, -1.0);
    out.z = std::move(z);
    out.res_inf = max_abs(scalar_residual(out.z, lambda));
    out.level = scalar_energy(out.z, lambda);
    out.iterations = it;
    return out;
}

// Inner problem of the indefinite path: stationarize
//   Psi_lambda(t u + sum_k c_k phi_k)  (- 1e-10 ||c_0||^2 on resonant modes)
// over t > 0 and the tilde coefficients, by damped Newton.
struct InnerSolve {
    bool converged = false;
    bool concave = false;
    double t = 1.0;
    std::vector<double> c;
    Field z;
    InnerSolve(const GridPtr& g) : z(g) {}
};

InnerSolve inner_maximize(const Field& u, const SubspaceSplit& split_info, double lambda,
                          const ScalarSolveOptions& opts, double t0,
                          const std::vector<double>& c0) {
    constexpr double tikhonov = 1e-10;
    const auto& tilde = split_info.tilde_fields();
    const int m = static_cast<int>(tilde.size());
    InnerSolve sol(u.grid_ptr());
    sol.t = t0 > 0 ? t0 : 1.0;
    sol.c = c0.size() == static_cast<std::size_t>(m) ? c0 : std::vector<double>(m, 0.0);

    auto assemble_point = [&](double t, const std::vector<double>& c) {
        Field z = u;
        scale(z, t);
        for (int k = 0; k < m; ++k) axpy(z, c[static_cast<std::size_t>(k)], tilde[static_cast<std::size_t>(k)]);
        return z;
    };

    Eigen::VectorXd g(m + 1);
    Eigen::MatrixXd H(m + 1, m + 1);
    for (int it = 0; it < opts.newton_max_iters; ++it) {
        Field z = assemble_point(sol.t, sol.c);
        Field r = scalar_residual(z, lambda);
        g(0) = l2_inner(r, u);
        for (int k = 0; k < m; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            g(k + 1) = l2_inner(r, tilde[ks]);
            if (split_info.tilde_is_zero_mode()[ks])
                g(k + 1) -= 2.0 * tikhonov * sol.c[ks];
        }
        const double scale_inner = residual_scale(z, lambda);
        if (g.lpNorm<Eigen::Infinity>() < opts.newton_tol * scale_inner) {
            sol.converged = true;
            sol.z = std::move(z);
            break;
        }
        // Hessian of the inner objective in the (u, tilde) coordinates.
        Field hu = scalar_hessian_apply(z, u, lambda);
        H(0, 0) = l2_inner(hu, u);
        for (int k = 0; k < m; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            H(0, k + 1) = H(k + 1, 0) = l2_inner(hu, tilde[ks]);
        }
        for (int k = 0; k < m; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            Field hk = scalar_hessian_apply(z, tilde[ks], lambda);
            for (int l = k; l < m; ++l) {
                const auto ls = static_cast<std::size_t>(l);
                H(k + 1, l + 1) = H(l + 1, k + 1) = l2_inner(hk, tilde[ls]);
            }
            if (split_info.tilde_is_zero_mode()[ks]) H(k + 1, k + 1) -= 2.0 * tikhonov;
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
        Eigen::VectorXd delta = lu.solve(-g);
        if (!delta.allFinite()) break;
        double damp = 1.0;
        for (int d = 0; d < 40 && sol.t + damp * delta(0) <= 1e-12; ++d) damp *= 0.5;
        sol.t += damp * delta(0);
        for (int k = 0; k < m; ++k) sol.c[static_cast<std::size_t>(k)] += damp * delta(k + 1);
    }
    if (!sol.converged) {
        sol.z = assemble_point(sol.t, sol.c);
        return sol;
    }
    // Negative definiteness of the Hessian at the solution certifies that an
    // inner maximum (not a saddle) was found.
    Field z = sol.z;
    Field hu = scalar_hessian_apply(z, u, lambda);
    H(0, 0) = l2_inner(hu, u);
    for (int k = 0; k < m; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        H(0, k + 1) = H(k + 1, 0) = l2_inner(hu, tilde[ks]);
    }
    for (int k = 0; k < m; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        Field hk = scalar_hessian_apply(z, tilde[ks], lambda);
        for (int l = k; l < m; ++l) {
            const auto ls = static_cast<std::size_t>(l);
            H(k + 1, l + 1) = H(l + 1, k + 1) = l2_inner(hk, tilde[ls]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    sol.concave = es.eigenvalues().maxCoeff() < 1e-8 * (1.0 + std::abs(es.eigenvalues().minCoeff()));
    return sol;
}

BranchOutcome descend_indefinite(Field u, double lambda, const SpectralBasis& basis,
                                 const SubspaceSplit& split_info,
                                 const ScalarSolveOptions& opts) {
    const auto& transform = basis.transform();
    const bool dirichlet = u.grid().boundary() == Boundary::Dirichlet;
    const double shift = 1.0 + std::abs(lambda);
    BranchOutcome out{Field(u.grid_ptr()), 0.0, std::numeric_limits<double>::infinity(), false,
                      false, 0};

    auto normalize_plus = [&](Field f) {
        f = split_info.project_plus(f);
        if (dirichlet) dirichlet_project(f);
        const double n = std::sqrt(l2_inner(f, f));
        if (!(n > 0)) return Field(f.grid_ptr());
        scale(f, 1.0 / n);
        return f;
    };

    u = normalize_plus(std::move(u));
    if (!(lp_norm(u, 4.0) > 0)) return out;

    double t_warm = 1.0;
    std::vector<double> c_warm(static_cast<std::size_t>(split_info.dim_tilde()), 0.0);
    // Seed t from the plus-part quotient, which is positive on H+.
    {
        const double B = bilinear_B(u, u, lambda);
        const double q = lp_norm(u, 4.0);
        if (B > 0 && q > 0) t_warm = std::sqrt(B) / (q * q);
    }

    InnerSolve inner = inner_maximize(u, split_info, lambda, opts, t_warm, c_warm);
    if (!inner.converged) {
        out.inner_failure = true;
        return out;
    }
    double value = scalar_energy(inner.z, lambda);
    double alpha = 1.0;
    int it = 0;
    for (; it < opts.max_outer_iters; ++it) {
        Field r = scalar_residual(inner.z, lambda);
        const double res = max_abs(r);
        if (res < opts.residual_tol * residual_scale(inner.z, lambda)) {
            out.converged = true;
            break;
        }
        Field g = transform.solve_shifted(r, shift);
        g = split_info.project_plus(g);
        if (dirichlet) dirichlet_project(g);
        const double slope = -inner.t * l2_inner(r, g);
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            Field trial_u = normalize_plus(sum_scaled(u, 1.0, g, -alpha));
            if (!(lp_norm(trial_u, 4.0) > 0)) {
                alpha *= opts.armijo_factor;
                continue;
            }
            InnerSolve trial = inner_maximize(trial_u, split_info, lambda, opts, inner.t, inner.c);
            if (trial.converged) {
                const double tv = scalar_energy(trial.z, lambda);
                if (tv <= value + opts.armijo_slope * alpha * slope) {
                    u = std::move(trial_u);
                    inner = std::move(trial);
                    value = tv;
                    accepted = true;
                    break;
                }
            }
            alpha *= opts.armijo_factor;
        }
        if (!accepted) break;
        alpha = std::min(alpha * 2.0, 8.0);
    }
    out.inner_failure = inner.converged && !inner.concave && !split_info.resonant();
    out.z = inner.z;
    out.res_inf = max_abs(scalar_residual(out.z, lambda));
    out.level = scalar_energy(out.z, lambda);
    out.iterations = it;
    out.converged = out.converged
        || out.res_inf < opts.residual_tol * residual_scale(out.z, lambda);
    return out;
}

ScalarReport assemble_report(std::vector<BranchOutcome> branches, double lambda,
                             const GridPtr& grid) {
    ScalarReport rep{Field(grid)};
    rep.lambda = lambda;
    int best = -1;
    for (int b = 0; b < static_cast<int>(branches.size()); ++b) {
        const auto& br = branches[static_cast<std::size_t>(b)];
        if (!br.converged) continue;
        rep.branch_levels.push_back(br.level);
        if (best < 0 || br.level < branches[static_cast<std::size_t>(best)].level) best = b;
    }
    if (best < 0) {
        // Non-fatal: flag and report the best residual seen.
        for (int b = 0; b < static_cast<int>(branches.size()); ++b) {
            const auto& br = branches[static_cast<std::size_t>(b)];
            if (best < 0 || br.res_inf < branches[static_cast<std::size_t>(best)].res_inf) best = b;
        }
        if (best < 0) throw precondition_error("scalar solve produced no candidate");
        rep.converged = false;
    } else {
        rep.converged = true;
    }
    auto& chosen = branches[static_cast<std::size_t>(best)];
    rep.best_branch = best;
    rep.candidate = std::move(chosen.z);
    rep.level = chosen.level;
    rep.residual_inf = chosen.res_inf;
    rep.iterations = chosen.iterations;
    rep.inner_failure = chosen.inner_failure;
    const double amp = max_abs(rep.candidate);
    rep.is_constant =
        (max_value(rep.candidate) - min_value(rep.candidate)) < 1e-7 * (amp > 0 ? amp : 1.0);
    rep.sign_changing = min_value(rep.candidate) < -1e-7 * amp && max_value(rep.candidate) > 1e-7 * amp;

    const int N = grid->dimension();
    const double vol = grid->volume();
    rep.constant_level = (lambda > 0 && grid->boundary() == Boundary::Neumann)
                             ? lambda * lambda * vol / 4.0
                             : quiet_nan;
    if (lambda > 0) {
        const auto tk = constants_KqKM(N);
        rep.bound_M = tk.M * std::pow(lambda, 0.5 * (4 - N));
    } else {
        rep.bound_M = quiet_nan;
    }
    const double S = sobolev_constant_S4();
    rep.bound_s2_over_8 = N == 4 ? S * S / 8.0 : quiet_nan;
    return rep;
}

} // namespace

ScalarReport solve_scalar_definite(double lambda, const GridPtr& grid,
                                   const ScalarSolveOptions& opts) {
    opts.validate();
    const int count = std::min<int>(opts.basis_count, static_cast<int>(grid->node_count()));
    SpectralBasis basis(grid, count);
    if (grid->boundary() == Boundary::Neumann) {
        if (!(lambda > 0))
            throw precondition_error("definite scalar solve needs lambda > 0 under Neumann");
    } else if (!(basis.eigenvalue(0) + lambda > 0)) {
        throw precondition_error("definite scalar solve needs lambda > -mu_1 under Dirichlet");
    }

    std::vector<Field> seeds;
    if (grid->boundary() == Boundary::Neumann) seeds.emplace_back(grid, 1.0);
    for (int k = grid->boundary() == Boundary::Neumann ? 1 : 0;
         k < basis.count() && static_cast<int>(seeds.size()) < 4; ++k)
        seeds.push_back(basis.eigenfield(k));
    for (int b = 0; static_cast<int>(seeds.size()) < opts.multistart; ++b) {
        auto rng = detail::branch_rng(opts.seed, static_cast<unsigned>(100 + b));
        seeds.push_back(detail::smooth_random(basis, rng, 12, 1.0));
    }

    std::vector<BranchOutcome> branches;
    branches.reserve(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i)
        branches.emplace_back(BranchOutcome{Field(grid), 0, 0, false, false, 0});
    parallel_for_indexed(seeds.size(), [&](std::size_t i) {
        branches[i] = descend_definite(seeds[i], lambda, basis.transform(), opts);
    });
    return assemble_report(std::move(branches), lambda, grid);
}

ScalarReport solve_scalar_indefinite(double lambda, const GridPtr& grid,
                                     const ScalarSolveOptions& opts) {
    opts.validate();
    if (grid->boundary() == Boundary::Neumann && lambda > 0)
        throw precondition_error("indefinite scalar solve expects lambda <= 0 under Neumann");
    const int count = std::min<int>(opts.basis_count, static_cast<int>(grid->node_count()));
    SpectralBasis basis(grid, count);
    SubspaceSplit s = split(basis, lambda);

    std::vector<Field> seeds;
    const int first_plus = s.dim_tilde();
    for (int k = first_plus; k < basis.count() && static_cast<int>(seeds.size()) < 3; ++k)
        seeds.push_back(basis.eigenfield(k));
    for (int b = 0; static_cast<int>(seeds.size()) < opts.multistart; ++b) {
        auto rng = detail::branch_rng(opts.seed, static_cast<unsigned>(500 + b));
        seeds.push_back(detail::smooth_random(basis, rng, 16));
    }

    std::vector<BranchOutcome> branches;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        branches.emplace_back(BranchOutcome{Field(grid), 0, 0, false, false, 0});
    parallel_for_indexed(seeds.size(), [&](std::size_t i) {
        branches[i] = descend_indefinite(seeds[i], lambda, basis, s, opts);
    });
    ScalarReport rep = assemble_report(std::move(branches), lambda, grid);
    rep.dim_tilde = s.dim_tilde();
    rep.resonant = s.resonant();
    return rep;
}

ScalarReport solve_scalar(double lambda, const GridPtr& grid, const ScalarSolveOptions& opts) {
    if (grid->boundary() == Boundary::Neumann)
        return lambda > 0 ? solve_scalar_definite(lambda, grid, opts)
                          : solve_scalar_indefinite(lambda, grid, opts);
    const SpectralBasis probe(grid, 1);
    return probe.eigenvalue(0) + lambda > 0 ? solve_scalar_definite(lambda, grid, opts)
                                            : solve_scalar_indefinite(lambda, grid, opts);
}

} // namespace groundstate
