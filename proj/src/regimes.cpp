#include "groundstate/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "groundstate/parallel.hpp"
#include "seeds.hpp"

namespace groundstate {

namespace {
constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();
}

double tent_constant_Kq(int N, double q) {
    if (N < 1 || N > 4) throw precondition_error("dimension must be 1..4");
    if (!(q >= 1.0)) throw precondition_error("Kq needs q >= 1");
    const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
    // int_0^1 (1-r)^q r^{N-1} dr = Beta(N, q+1)
    return area * std::beta(static_cast<double>(N), q + 1.0);
}

TentConstants constants_KqKM(int N) {
    if (N < 1 || N > 4) throw precondition_error("dimension must be 1..4");
    TentConstants c;
    c.K = 2.0 * std::pow(std::numbers::pi, 0.5 * N) / (N * std::tgamma(0.5 * N));
    c.K2 = tent_constant_Kq(N, 2.0);
    c.K4 = tent_constant_Kq(N, 4.0);
    c.M = (c.K + c.K2) * (c.K + c.K2) / (4.0 * c.K4);
    return c;
}

BubbleIntegrals bubble_radial_integrals() {
    // U_1(r) = sqrt(8) / (1 + r^2) in R^4:
    //   |grad U|^2 = 32 r^2 / (1+r^2)^4,  U^4 = 64 / (1+r^2)^4,
    //   int_0^infty r^5/(1+r^2)^4 dr = 1/6, int_0^infty r^3/(1+r^2)^4 dr = 1/12.
    const double area = 2.0 * std::numbers::pi * std::numbers::pi; // unit S^3
    return BubbleIntegrals{32.0 * area / 6.0, 64.0 * area / 12.0};
}

double sobolev_constant_S4() {
    const auto I = bubble_radial_integrals();
    return I.grad_sq / std::sqrt(I.fourth);
}

double s_infinity_beta(double beta) {
    if (!(beta > -1.0)) throw precondition_error("S_{inf,beta} needs beta > -1");
    return std::numbers::sqrt2 * sobolev_constant_S4() / std::sqrt(1.0 + beta);
}

std::string ConstantFamily::describe() const {
    switch (kind) {
        case Kind::SemiTrivialU: return "semi-trivial (sqrt(lambda1), 0)";
        case Kind::SemiTrivialV: return "semi-trivial (0, sqrt(lambda2))";
        case Kind::IsolatedPair: return "isolated fully nontrivial pair";
        case Kind::Circle: return "circle family c1^2 + c2^2 = lambda1";
        case Kind::Hyperbola: return "hyperbola family c1^2 - c2^2 = lambda1";
    }
    return {};
}

std::vector<ConstantFamily> constant_solutions(const SystemParams& p) {
    std::vector<ConstantFamily> out;
    if (p.lambda1 > 0)
        out.push_back({ConstantFamily::Kind::SemiTrivialU, std::sqrt(p.lambda1), 0.0});
    if (p.lambda2 > 0)
        out.push_back({ConstantFamily::Kind::SemiTrivialV, 0.0, std::sqrt(p.lambda2)});
    if (p.beta == 1.0 && p.lambda1 == p.lambda2 && p.lambda1 > 0) {
        const double c = std::sqrt(0.5 * p.lambda1);
        out.push_back({ConstantFamily::Kind::Circle, c, c});
    } else if (p.beta == -1.0 && p.lambda1 == -p.lambda2) {
        const double c2sq = std::max(0.0, -p.lambda1) + 0.5 * std::max(1.0, std::abs(p.lambda1));
        out.push_back({ConstantFamily::Kind::Hyperbola, std::sqrt(p.lambda1 + c2sq), std::sqrt(c2sq)});
    } else if (p.beta != 1.0 && p.beta != -1.0) {
        const double den = 1.0 - p.beta * p.beta;
        const double c1sq = (p.lambda1 - p.beta * p.lambda2) / den;
        const double c2sq = (p.lambda2 - p.beta * p.lambda1) / den;
        if (c1sq >= 0 && c2sq >= 0 && (c1sq > 0 || c2sq > 0))
            out.push_back({ConstantFamily::Kind::IsolatedPair, std::sqrt(c1sq), std::sqrt(c2sq)});
    }
    return out;
}

std::optional<double> constant_energy(const SystemParams& p, const DomainSpec& domain) {
    if (p.beta == 1.0 || p.beta == -1.0) return std::nullopt;
    const double den = 1.0 - p.beta * p.beta;
    if ((p.lambda1 - p.beta * p.lambda2) / den < 0 || (p.lambda2 - p.beta * p.lambda1) / den < 0)
        return std::nullopt;
    const double num = p.lambda1 * p.lambda1 - 2.0 * p.beta * p.lambda1 * p.lambda2
                     + p.lambda2 * p.lambda2;
    return num * domain.volume() / (4.0 * den);
}

double beta_underbar(double L1, double L2) {
    if (!(L1 > 0) || !(L2 > 0)) throw precondition_error("beta_underbar needs positive levels");
    return std::min(std::sqrt(L1), std::sqrt(L2)) / std::sqrt(L1 + L2);
}

Conditions check_conditions(const SystemParams& p, const DomainSpec& domain,
                            const ConditionInputs& in) {
    Conditions c;
    const int N = domain.dimension();
    const auto tk = constants_KqKM(N);
    const double l1 = p.lambda1, l2 = p.lambda2, b = p.beta;
    const double pw = 0.5 * (4 - N);

    c.cond_1_4 = {true, !(l1 > 0 && l2 > 0) && b > 0};

    if (l1 > 0 && l2 > 0) {
        const double lo = std::min(l1 / l2, l2 / l1);
        const double hi = std::max(l1 / l2, l2 / l1);
        c.cond_1_5 = {true, l1 > 0 && l2 > 0 && b > lo && b < hi};
    } else {
        // Ratio undefined when a lambda vanishes; negative lambdas fall
        // outside the display's regime as well.
        c.cond_1_5 = {l1 != 0 && l2 != 0, false};
    }

    if (l1 > 0 && l2 > 0 && b != 1.0 && b != -1.0) {
        const double lhs = tk.M * (std::pow(l1, pw) + std::pow(l2, pw));
        const double rhs = (l1 * l1 + l2 * l2 - 2.0 * b * l1 * l2) * domain.volume()
                         / (4.0 * (1.0 - b * b));
        c.cond_1_6 = {true, lhs <= rhs};
    } else {
        c.cond_1_6 = {false, false};
    }

    if (in.CS && l1 > 0 && l2 > 0 && b > -1.0 && b != 1.0) {
        const double lhs = (2.0 * tk.K + tk.K2) * (2.0 * tk.K + tk.K2)
                         * std::pow(l1 + l2, pw) / (8.0 * tk.K4 * (1.0 + b));
        const double cs2 = (*in.CS) * (*in.CS);
        const double min_l = std::min({1.0, l1 * l1, l2 * l2});
        const double const_term = (l1 * l1 + l2 * l2 - 2.0 * b * l1 * l2) * domain.volume()
                                / (4.0 * (1.0 - b * b));
        c.cond_1_8 = {true, lhs < std::min(cs2 * min_l / 4.0, const_term)};
    } else {
        c.cond_1_8 = {false, false};
    }

    if (l1 > 0 && l2 > 0) {
        const double lhs = tk.M * (std::pow(l1, pw) + std::pow(l2, pw)
                                   + 2.0 * std::abs(b) * std::pow(l1, 0.5 * pw) * std::pow(l2, 0.5 * pw));
        const double rhs = l1 * l1 + l2 * l2 + 2.0 * std::abs(b) * l1 * l2;
        c.thm_competitive = {true, b > -1.0 && b < 0.0 && lhs < rhs};
    } else {
        c.thm_competitive = {false, false};
    }

    if (l1 == l2 && l1 > 0) {
        const double thr = (2.0 * tk.K + tk.K2) * (2.0 * tk.K + tk.K2)
                         / (4.0 * tk.K4 * domain.volume());
        c.remark_symmetric = {true, std::pow(l1, 0.5 * N) > thr};
    } else {
        c.remark_symmetric = {false, false};
    }

    if (in.L1 && in.L2 && *in.L1 > 0 && *in.L2 > 0 && l1 > 0 && l2 > 0) {
        const double bu = beta_underbar(*in.L1, *in.L2);
        const double ratio = (l1 * l1 + l2 * l2) / (4.0 * tk.M * (std::pow(l1, pw) + std::pow(l2, pw)))
                           - 1.0;
        c.remark_weak_coupling = {true, b < std::min(ratio, bu)};
    } else {
        c.remark_weak_coupling = {false, false};
    }

    // Theorem tag: which existence clause the parameter point matches.
    if (b > 0) {
        if (l1 > 0 && l2 > 0 && b >= std::max(l1 / l2, l2 / l1) && c.cond_1_8.ok())
            c.selected_theorem = "Thm 1.3(ii): non-constant least energy (strong cooperation)";
        else if (c.cond_1_4.ok() && b > 1)
            c.selected_theorem = "Thm 1.3(ii) candidate: ground state, beta large";
        else if (c.remark_weak_coupling.ok())
            c.selected_theorem = "Thm 1.3(i): least energy for weak coupling (non-constant)";
        else
            c.selected_theorem = "Thm 1.1: ground state exists (beta > 0)";
    } else if (b < 0) {
        if (l1 > 0 && l2 > 0)
            c.selected_theorem = (b <= -1.0 || c.thm_competitive.ok())
                                     ? "Thm 1.6: least energy, non-constant"
                                     : "Thm 1.6: least energy (positive)";
        else if (l1 > 0 && l2 == 0)
            c.selected_theorem = "Thm 1.7 regime: zero mass, |beta| large";
        else if (l1 == l2 && l1 <= 0)
            c.selected_theorem = std::abs(b) < 1.0 ? "Thm 1.5 regime: |beta| small"
                                                   : "Thm 1.8 regime: |beta| large";
        else
            c.selected_theorem = "outside stated theorems";
    } else {
        c.selected_theorem = "beta = 0: decoupled scalar problems";
    }
    return c;
}

double phi_quotient(const Pair& p, const SystemParams& params, double L) {
    if (!(L > 0)) throw precondition_error("phi_quotient needs L > 0");
    const double o = overlap(p.u, p.v);
    if (!(o > 0)) throw precondition_error("phi_quotient needs positive overlap");
    const double B = bilinear_B(p.u, p.u, params.lambda1) + bilinear_B(p.v, p.v, params.lambda2);
    const double q1 = std::pow(lp_norm(p.u, 4.0), 4);
    const double q2 = std::pow(lp_norm(p.v, 4.0), 4);
    return (B * B / (4.0 * L) - q1 - q2) / (2.0 * o);
}

namespace {

// A few safeguarded descent steps on Phi, driving a sample toward the
// infimum beta*.
double descend_phi(Pair p, const SystemParams& params, double L, int iters) {
    double value = phi_quotient(p, params, L);
    double alpha = 0.5;
    const double shift1 = params.lambda1 > 0 ? params.lambda1 : 1.0;
    const double shift2 = params.lambda2 > 0 ? params.lambda2 : 1.0;
    for (int it = 0; it < iters; ++it) {
        const double o = overlap(p.u, p.v);
        const double B = bilinear_B(p.u, p.u, params.lambda1)
                       + bilinear_B(p.v, p.v, params.lambda2);
        // L2 gradient of Phi: [ (B/L)(-Lap u + l u) - 4u^3 - 4 Phi u v^2 ] / (2 o), same for v.
        Field gu = laplacian_apply(p.u);
        Field gv = laplacian_apply(p.v);
        auto u = p.u.values();
        auto v = p.v.values();
        auto a = gu.values();
        auto bfield = gv.values();
        for (std::size_t i = 0; i < u.size(); ++i) {
            a[i] = ((a[i] + params.lambda1 * u[i]) * (B / L) - 4.0 * u[i] * u[i] * u[i]
                    - 4.0 * value * u[i] * v[i] * v[i]) / (2.0 * o);
            bfield[i] = ((bfield[i] + params.lambda2 * v[i]) * (B / L) - 4.0 * v[i] * v[i] * v[i]
                         - 4.0 * value * v[i] * u[i] * u[i]) / (2.0 * o);
        }
        Field du = precondition(gu, shift1);
        Field dv = precondition(gv, shift2);
        const double slope = -(l2_inner(gu, du) + l2_inner(gv, dv));
        bool accepted = false;
        for (int ls = 0; ls < 20; ++ls) {
            Pair trial{sum_scaled(p.u, 1.0, du, -alpha), sum_scaled(p.v, 1.0, dv, -alpha)};
            if (overlap(trial.u, trial.v) > 0 && lp_norm(trial.u, 4.0) > 0
                && lp_norm(trial.v, 4.0) > 0) {
                const double tv = phi_quotient(trial, params, L);
                if (tv <= value + 1e-4 * alpha * slope) {
                    p = std::move(trial);
                    value = tv;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
        alpha = std::min(alpha * 2.0, 4.0);
    }
    return value;
}

} // namespace

BetaStarEstimate beta_star_estimate(const SystemParams& params, const GridPtr& grid, double L,
                                    int samples, unsigned seed) {
    if (!(params.lambda1 > 0) || !(params.lambda2 > 0))
        throw precondition_error("beta* estimate is defined for lambda1, lambda2 > 0");
    if (!(L > 0)) throw precondition_error("beta* estimate needs L > 0");
    const int count = std::min<int>(24, static_cast<int>(grid->node_count()));
    SpectralBasis basis(grid, count);

    BetaStarEstimate est;
    est.min_sampled = std::numeric_limits<double>::infinity();

    // Symmetric construction: u = v = scalar candidate of the smaller level.
    {
        ScalarSolveOptions sopts;
        sopts.seed = seed;
        const double lam = params.lambda1 <= params.lambda2 ? params.lambda1 : params.lambda2;
        ScalarReport rep = solve_scalar(lam, grid, sopts);
        Pair sym{rep.candidate, rep.candidate};
        if (overlap(sym.u, sym.v) > 0) {
            const double val = phi_quotient(sym, params, L);
            est.min_sampled = std::min(est.min_sampled, val);
            est.min_sampled = std::min(est.min_sampled, descend_phi(sym, params, L, 25));
            ++est.samples;
        }
    }

    std::vector<double> values(static_cast<std::size_t>(samples),
                               std::numeric_limits<double>::infinity());
    parallel_for_indexed(static_cast<std::size_t>(samples), [&](std::size_t i) {
        auto rng = detail::branch_rng(seed, static_cast<unsigned>(7000 + i));
        Field u = detail::smooth_random(basis, rng, 10, 0.5);
        Field v = detail::smooth_random(basis, rng, 10, 0.5);
        detail::take_abs(u);
        detail::take_abs(v);
        for (double& x : u.values()) x += 0.05;
        for (double& x : v.values()) x += 0.05;
        Pair p{std::move(u), std::move(v)};
        if (!(overlap(p.u, p.v) > 0)) return;
        double val = phi_quotient(p, params, L);
        if (i % 4 == 0) val = std::min(val, descend_phi(p, params, L, 15));
        values[i] = val;
    });
    for (double v : values) {
        if (std::isfinite(v)) {
            est.min_sampled = std::min(est.min_sampled, v);
            ++est.samples;
        }
    }
    if (est.samples == 0)
        throw sampling_failure_error("no beta* sample had positive overlap");
    est.value = est.min_sampled;
    return est;
}

double sobolev_constant_CS(const GridPtr& grid, const ScalarSolveOptions& opts) {
    // C_S = inf (|grad u|_2^2 + |u|_2^2) / |u|_4^2 is the lambda = 1 Nehari
    // quotient; the scalar solver returns its candidate level L with
    // quotient value 2 sqrt(L).
    ScalarReport rep = solve_scalar_definite(1.0, grid, opts);
    return 2.0 * std::sqrt(rep.level);
}

TentRecord tent_suite(double eps, const GridPtr& grid,
                      const std::optional<SystemParams>& params) {
    if (!(eps > 0)) throw precondition_error("tent suite needs eps > 0");
    const double root = std::sqrt(eps);
    if (root < 4.0 * grid->max_spacing())
        throw resolution_error("tent under-resolved: sqrt(eps) < 4 h");
    const int N = grid->dimension();
    for (int a = 0; a < N; ++a)
        if (root > 0.5 * grid->domain().side_length(a))
            throw resolution_error("tent support leaves the domain");

    Field phi(grid);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < N; ++a) {
            const double d = grid->coordinate(i, a) - 0.5 * grid->domain().side_length(a);
            r2 += d * d;
        }
        const double r = std::sqrt(r2);
        phi[i] = r < root ? std::pow(eps, -0.5 * N) * (1.0 - r / root) : 0.0;
    }

    const auto tk = constants_KqKM(N);
    TentRecord rec;
    rec.eps = eps;
    rec.q1 = lp_norm(phi, 1.0);
    rec.q2 = std::pow(lp_norm(phi, 2.0), 2);
    rec.q4 = std::pow(lp_norm(phi, 4.0), 4);
    rec.grad_sq = bilinear_B(phi, phi, 0.0);
    rec.ref_q1 = tent_constant_Kq(N, 1.0);
    rec.ref_q2 = tent_constant_Kq(N, 2.0) * std::pow(eps, 0.5 * N * (1.0 - 2.0));
    rec.ref_q4 = tent_constant_Kq(N, 4.0) * std::pow(eps, 0.5 * N * (1.0 - 4.0));
    rec.ref_grad = tk.K * std::pow(eps, -1.0 - 0.5 * N);
    if (params && params->beta > -1.0 && params->lambda1 + params->lambda2 > 0) {
        rec.gbeta_test = (2.0 * tk.K + tk.K2) * (2.0 * tk.K + tk.K2)
                       * std::pow(params->lambda1 + params->lambda2, 0.5 * (4 - N))
                       / (8.0 * tk.K4 * (1.0 + params->beta));
    } else {
        rec.gbeta_test = quiet_nan;
    }
    return rec;
}

BubbleRecord bubble_suite(double eps, const GridPtr& grid, double cutoff_radius,
                          double beta_for_s_inf) {
    if (grid->dimension() != 4) throw precondition_error("bubble suite is 4D only");
    if (!(eps > 0)) throw precondition_error("bubble suite needs eps > 0");
    const double h = grid->max_spacing();
    if (eps < 4.0 * h * h) throw resolution_error("bubble under-resolved: eps < 4 h^2");
    double min_side = grid->domain().side_length(0);
    for (int a = 1; a < 4; ++a) min_side = std::min(min_side, grid->domain().side_length(a));
    if (!(cutoff_radius > 0) || cutoff_radius > 0.5 * min_side)
        throw precondition_error("cutoff radius must be positive and at most half the smallest side");

    // Concentration point: center of the face x_4 = 0 (a boundary node for
    // odd per-axis node counts). The bubble is even across that face, so it
    // is compatible with the Neumann reflection.
    std::array<double, 4> x0{};
    for (int a = 0; a < 3; ++a) x0[static_cast<std::size_t>(a)] = 0.5 * grid->domain().side_length(a);
    x0[3] = 0.0;

    const double half = 0.5 * cutoff_radius;
    Field w(grid);
    for (std::size_t i = 0; i < w.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < 4; ++a) {
            const double d = grid->coordinate(i, a) - x0[static_cast<std::size_t>(a)];
            r2 += d * d;
        }
        const double r = std::sqrt(r2);
        double eta;
        if (r <= half) {
            eta = 1.0;
        } else if (r >= cutoff_radius) {
            eta = 0.0;
        } else {
            const double s = (r - half) / half;
            eta = 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s); // C^2 quintic step
        }
        w[i] = eta * std::sqrt(8.0 * eps) / (eps + r2);
    }

    const double S = sobolev_constant_S4();
    BubbleRecord rec;
    rec.eps = eps;
    rec.grad_sq = bilinear_B(w, w, 0.0);
    rec.fourth = std::pow(lp_norm(w, 4.0), 4);
    rec.l2_sq = std::pow(lp_norm(w, 2.0), 2);
    rec.l1 = lp_norm(w, 1.0);
    rec.l3_cubed = std::pow(lp_norm(w, 3.0), 3);
    rec.half_s2 = 0.5 * S * S;
    rec.l2_ratio = rec.l2_sq / (eps * std::abs(std::log(eps)));
    rec.s_inf_beta = s_infinity_beta(beta_for_s_inf);
    return rec;
}

} // namespace groundstate
