#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groundstate/operators.hpp"
#include "groundstate/scalar.hpp"

namespace groundstate {

/// The dimensional constants of the tent-function estimates:
///   K   = 2 pi^{N/2} / (N Gamma(N/2))
///   K_q = (2 pi^{N/2} / Gamma(N/2)) * Beta(N, q+1)
///   M   = (K + K_2)^2 / (4 K_4)
struct TentConstants {
    double K = 0.0;
    double K2 = 0.0;
    double K4 = 0.0;
    double M = 0.0;
};

TentConstants constants_KqKM(int N);
double tent_constant_Kq(int N, double q);

/// Best constant of D^{1,2}(R^4) -> L^4(R^4), from the closed-form radial
/// integrals of the bubble profile (8 eps)^{1/2} / (eps + r^2).
double sobolev_constant_S4();
/// Radial integrals of the eps = 1 bubble: {int |grad U|^2, int U^4}.
struct BubbleIntegrals {
    double grad_sq;
    double fourth;
};
BubbleIntegrals bubble_radial_integrals();
/// S_{infinity,beta} = sqrt(2) S / sqrt(1 + beta), beta > -1.
double s_infinity_beta(double beta);

/// One family of constant solutions of the algebraic system
/// lambda1 c1 = c1^3 + beta c1 c2^2, lambda2 c2 = c2^3 + beta c1^2 c2.
struct ConstantFamily {
    enum class Kind { SemiTrivialU, SemiTrivialV, IsolatedPair, Circle, Hyperbola };
    Kind kind;
    double c1 = 0.0; // representative; components also valid with flipped signs
    double c2 = 0.0;
    std::string describe() const;
};

/// Exhaustive enumeration of the constant-solution branches.
std::vector<ConstantFamily> constant_solutions(const SystemParams& params);

/// Closed-form energy of the isolated fully nontrivial constants,
/// (l1^2 - 2 b l1 l2 + l2^2) |Omega| / (4 (1 - b^2)); empty when the family
/// does not exist.
std::optional<double> constant_energy(const SystemParams& params, const DomainSpec& domain);

/// Optional inputs for the condition checkers; a condition whose inputs are
/// missing is reported as not-applicable.
struct ConditionInputs {
    std::optional<double> L1;
    std::optional<double> L2;
    std::optional<double> CS; // discrete Sobolev constant estimate
};

/// A checked inequality: either not applicable or a definite boolean.
struct ConditionResult {
    bool applicable = false;
    bool holds = false;
    bool ok() const { return applicable && holds; }
};

/// The sufficient-condition checkers, each the literal displayed inequality.
struct Conditions {
    ConditionResult cond_1_4;     // (l1,l2) outside (0,inf)^2 and beta > 0
    ConditionResult cond_1_5;     // beta strictly between the lambda ratios
    ConditionResult cond_1_6;     // M(l1^p + l2^p) <= constant-energy expression
    ConditionResult cond_1_8;     // tent bound < min{CS^2 min{1,l1^2,l2^2}/4, const energy}
    ConditionResult thm_competitive; // beta in (-1,0) and the mixed-power inequality
    ConditionResult remark_symmetric; // l1 = l2 = l > 0: l^{N/2} > (2K+K2)^2/(4 K4 |Omega|)
    ConditionResult remark_weak_coupling; // beta < min{(l1^2+l2^2)/(4M(...)) - 1, beta_underbar}
    std::string selected_theorem;
};

Conditions check_conditions(const SystemParams& params, const DomainSpec& domain,
                            const ConditionInputs& inputs);

/// beta_underbar = min{sqrt(L1), sqrt(L2)} / sqrt(L1 + L2), in (0, 1/sqrt(2)].
double beta_underbar(double L1, double L2);

/// Upper estimate of beta* by sampling and descending
/// Phi(u,v) = ((4L)^{-1} B((u,v),(u,v))^2 - |u|_4^4 - |v|_4^4) / (2 int u^2 v^2).
struct BetaStarEstimate {
    double value = 0.0;      // min over samples, an upper bound for beta*
    double min_sampled = 0.0;
    int samples = 0;
};
BetaStarEstimate beta_star_estimate(const SystemParams& params, const GridPtr& grid, double L,
                                    int samples, unsigned seed = 0);
double phi_quotient(const Pair& p, const SystemParams& params, double L);

/// Discrete best constant of H^1 -> L^4 by Sobolev-gradient descent.
/// Upper bound semantics: the value comes from minimizing over candidates.
double sobolev_constant_CS(const GridPtr& grid, const ScalarSolveOptions& opts = {});

/// Record of one tent-profile verification at a given eps.
struct TentRecord {
    double eps = 0.0;
    double q1 = 0.0, q2 = 0.0, q4 = 0.0; // |phi|_q^q by quadrature
    double grad_sq = 0.0;
    double ref_q1 = 0.0, ref_q2 = 0.0, ref_q4 = 0.0, ref_grad = 0.0; // K_q eps^{(1-q)N/2}, K eps^{-1-N/2}
    double gbeta_test = 0.0; // (2K+K2)^2 (l1+l2)^{(4-N)/2} / (8 K4 (1+beta)), when params given
};

TentRecord tent_suite(double eps, const GridPtr& grid,
                      const std::optional<SystemParams>& params = std::nullopt);

/// Record of one boundary-bubble verification at a given eps (N = 4).
struct BubbleRecord {
    double eps = 0.0;
    double grad_sq = 0.0;     // |grad w_eps|_2^2, expected near S^2/2
    double fourth = 0.0;      // |w_eps|_4^4
    double l2_sq = 0.0;       // |w_eps|_2^2 = O(eps |log eps|)
    double l1 = 0.0;          // O(sqrt eps)
    double l3_cubed = 0.0;    // O(sqrt eps)
    double half_s2 = 0.0;     // S^2/2 reference
    double l2_ratio = 0.0;    // l2_sq / (eps |log eps|)
    double s_inf_beta = 0.0;  // S_{infinity,beta} for the requested beta
};

BubbleRecord bubble_suite(double eps, const GridPtr& grid, double cutoff_radius,
                          double beta_for_s_inf = 1.0);

} // namespace groundstate
