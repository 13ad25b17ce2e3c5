#pragma once

#include "groundstate/domain.hpp"

namespace groundstate {

/// The parameter triple (lambda1, lambda2, beta) of the coupled system.
struct SystemParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double beta = 0.0;
};

/// Action of the discrete -Laplacian (2nd-order stencil). Neumann axes use
/// ghost reflection, Dirichlet axes use zero extension with the output
/// zeroed on boundary nodes. Annihilates constants under Neumann.
Field laplacian_apply(const Field& f);

/// B(f,g,lambda) = <grad f, grad g> + lambda <f,g>, with the gradient term
/// evaluated through the stencil as l2_inner(laplacian_apply(f), g) so that
/// energy, residual and Hessian share one discrete operator.
double bilinear_B(const Field& f, const Field& g, double lambda);

/// Energy of the pair:
/// 1/2 B(u,u,l1) + 1/2 B(v,v,l2) - 1/4 (|u|_4^4 + 2 beta int u^2 v^2 + |v|_4^4).
double energy(const Pair& p, const SystemParams& params);

/// L2-representative of the energy derivative:
///   r_u = -Lap u + l1 u - u^3 - beta u v^2,
///   r_v = -Lap v + l2 v - v^3 - beta u^2 v.
Pair residual(const Pair& p, const SystemParams& params);

/// Second derivative applied to a direction (L2 representative):
///   h_u = -Lap du + l1 du - 3u^2 du - beta v^2 du - 2 beta u v dv
///   h_v = -Lap dv + l2 dv - 3v^2 dv - beta u^2 dv - 2 beta u v du
Pair hessian_apply(const Pair& p, const Pair& dir, const SystemParams& params);

/// Natural magnitude of the residual terms, used to turn relative residual
/// tolerances into absolute infinity-norm thresholds.
double residual_scale(const Pair& p, const SystemParams& params);
double residual_scale(const Field& z, double lambda);

/// Zero boundary values (the admissible-space projection for Dirichlet runs).
void dirichlet_project(Field& f);

} // namespace groundstate
