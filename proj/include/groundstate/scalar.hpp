#pragma once

#include <vector>

#include "groundstate/operators.hpp"
#include "groundstate/spectral.hpp"

namespace groundstate {

struct ScalarSolveOptions {
    int max_outer_iters = 2000;
    double residual_tol = 1e-8; // relative to residual_scale(z, lambda)
    double armijo_factor = 0.5;
    double armijo_slope = 1e-4;
    int multistart = 8;
    unsigned seed = 0;
    double newton_tol = 1e-12;
    int newton_max_iters = 50;
    int basis_count = 48; // modes available for seeding and splits
    bool newton_polish = true;

    void validate() const;
};

/// Outcome of a scalar solve. The level is always an upper bound obtained
/// from residual-certified candidates, never a certified infimum.
struct ScalarReport {
    Field candidate;
    double level = 0.0;          // Psi_lambda(candidate)
    double residual_inf = 0.0;
    bool converged = false;
    bool is_constant = false;
    bool sign_changing = false;
    bool inner_failure = false;  // indefinite path: inner Hessian not negative definite
    bool resonant = false;       // |mu_k + lambda| <= tol_zero for some mode
    int iterations = 0;
    int dim_tilde = 0;
    int best_branch = -1;
    double lambda = 0.0;
    // Closed-form comparisons (NaN when not applicable).
    double constant_level = 0.0;   // lambda^2 |Omega| / 4, Neumann, lambda > 0
    double bound_M = 0.0;          // M lambda^{(4-N)/2}, lambda > 0
    double bound_s2_over_8 = 0.0;  // S^2/8 in dimension 4
    std::vector<double> branch_levels;
};

/// Psi_lambda(z) = 1/2 B(z,z,lambda) - 1/4 |z|_4^4.
double scalar_energy(const Field& z, double lambda);

/// L2 representative of Psi_lambda': -Lap z + lambda z - z^3.
Field scalar_residual(const Field& z, double lambda);

/// Scale z onto the Nehari set: t^2 = B(z,z,lambda) / |z|_4^4.
/// Throws not_in_cone_error when B <= 0 (use the generalized path).
Field scalar_nehari_project(const Field& z, double lambda);

/// Multistart Sobolev-gradient descent with Nehari reprojection.
/// Requires B(.,.,lambda) positive definite: lambda > 0 under Neumann, or
/// lambda > -mu_1 (discrete) under Dirichlet.
ScalarReport solve_scalar_definite(double lambda, const GridPtr& grid,
                                   const ScalarSolveOptions& opts = {});

/// Generalized-Nehari path for the indefinite quadratic part: outer descent
/// over unit directions in H+, inner Newton maximization over t > 0 and
/// the tilde space.
ScalarReport solve_scalar_indefinite(double lambda, const GridPtr& grid,
                                     const ScalarSolveOptions& opts = {});

/// Dispatch on the discrete definiteness of B.
ScalarReport solve_scalar(double lambda, const GridPtr& grid,
                          const ScalarSolveOptions& opts = {});

} // namespace groundstate
