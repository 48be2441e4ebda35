#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <span>

#include "coneadapt/error_model.hpp"
#include "coneadapt/sampled_function.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// A fixed-cost algorithm family over the nested uniform grids. solve and
// ftilde must be positively homogeneous in the samples; fnorm_lower may be
// absent (disengaged) below its minimal index.
template <class F>
concept ProblemFamily = requires(const F f, index_t n, std::span<const double> v, double x) {
    typename F::output_type;
    { f.model() } -> std::convertible_to<const ErrorModel&>;
    { f.tau_min() } -> std::convertible_to<double>;
    { f.solve(n, v) } -> std::same_as<typename F::output_type>;
    { f.ftilde(n, v) } -> std::convertible_to<double>;
    { f.fnorm_lower(n, v) } -> std::convertible_to<std::optional<double>>;
    { f.first_index(x) } -> std::convertible_to<index_t>;
    { f.next_embedding_index(n, x) } -> std::convertible_to<index_t>;
    { f.prev_embedding_index(n, n) } -> std::convertible_to<index_t>;
    { f.stage2_regrow(n, x) } -> std::convertible_to<index_t>;
};

namespace detail {

inline void require_adaptive_preconditions(const ConeSpec& cone, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("error tolerance must be positive");
    if (!(cone.tau >= cone.tau_min)) {
        throw std::invalid_argument("adaptive engines require tau >= tau_min");
    }
}

}  // namespace detail

// Fixed sample size n = h^{-1}(eps/sigma); the guarantee is conditional on
// the caller's (unchecked) assertion that f lies in the sigma-ball.
template <ProblemFamily F>
RunResult<typename F::output_type> run_non_adaptive(const F& family, double sigma,
                                                    SampledFunction& f, double eps) {
    if (!(eps > 0.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("run_non_adaptive: eps and sigma must be positive");
    }
    const index_t start_evals = f.evaluations();
    RunResult<typename F::output_type> res;
    index_t n = h_inverse(family.model(), HKind::h, eps / sigma);
    res.answer = family.solve(n, f.values_on_grid(n));
    res.cost = f.evaluations() - start_evals;
    res.cost_nominal = n;
    return res;
}

// Stage 1 bounds the strong semi-norm by tau C_{n_F} Ftilde_{n_F}(f);
// stage 2 solves at n_A = h^{-1}(eps / bound). Shared abscissae are
// evaluated once (`cost`), while `cost_nominal` reports n_F + n_A.
template <ProblemFamily F>
RunResult<typename F::output_type> run_two_stage(const F& family, const ConeSpec& cone,
                                                 SampledFunction& f, double eps, index_t n_F,
                                                 std::optional<index_t> budget = std::nullopt) {
    detail::require_adaptive_preconditions(cone, eps);
    const ErrorModel& model = family.model();
    const InflationFactors infl = inflation_factors(model, cone, n_F);  // needs h_plus(n_F) < 1/tau

    const index_t start_evals = f.evaluations();
    RunResult<typename F::output_type> res;
    res.final_tau = cone.tau;

    auto grid = f.values_on_grid(n_F);
    const double ft = family.ftilde(n_F, grid);
    const std::optional<double> fl = family.fnorm_lower(n_F, grid);
    res.trace.push_back({n_F, ft, fl, cone.tau});
    if (fl && tau_min_estimate(ft, *fl, model.h_plus(n_F)) > cone.tau) {
        res.cone_violation_detected = true;
    }

    index_t n_A;
    if (ft == 0.0) {
        // The data-driven bound is zero: any index is accurate for in-cone
        // inputs, so answer at the smallest one from cached endpoints.
        n_A = model.min_index;
        res.cost_nominal = n_F;
    } else {
        const double fnorm_bound = cone.tau * infl.big_c_n * ft;
        n_A = h_inverse(model, HKind::h, eps / fnorm_bound);
        if (budget && n_A > *budget) {
            n_A = *budget;
            res.warning = true;
        }
        res.cost_nominal = n_F + n_A;
    }
    res.answer = family.solve(n_A, f.values_on_grid(n_A));
    res.cost = f.evaluations() - start_evals;
    return res;
}

// The multi-stage loop: estimate Ftilde_{n_i}, optionally update tau from
// the necessary condition, stop once tau C_{n_i} h(n_i) Ftilde_{n_i} <= eps,
// otherwise grow to the smallest embedding index at least
// h^{-1}(eps ctilde_{n_i} / (tau Ftilde_{n_i})). A budget-exceeding proposal
// falls back to the largest embedding index within budget and sets the
// warning flag; the best-effort answer is still returned.
template <ProblemFamily F>
RunResult<typename F::output_type> run_multi_stage(const F& family, const ConeSpec& cone,
                                                   SampledFunction& f, double eps,
                                                   std::optional<index_t> budget = std::nullopt,
                                                   TauPolicy policy = TauPolicy::inflate,
                                                   std::optional<index_t> n1_override = std::nullopt) {
    detail::require_adaptive_preconditions(cone, eps);
    const ErrorModel& model = family.model();

    const index_t start_evals = f.evaluations();
    RunResult<typename F::output_type> res;
    double tau = cone.tau;

    index_t n = n1_override ? *n1_override : family.first_index(tau);
    if (budget) {
        if (*budget < model.min_index) throw std::invalid_argument("budget below the smallest index");
        if (n > *budget) {
            n = *budget;
            res.warning = true;
        }
    }

    auto grid = f.values_on_grid(n);
    for (;;) {
        const double ft = family.ftilde(n, grid);
        const std::optional<double> fl = family.fnorm_lower(n, grid);

        if (policy == TauPolicy::inflate && fl) {
            const double tau_min_n = tau_min_estimate(ft, *fl, model.h_plus(n));
            if (tau_min_n > tau) {
                tau = 2.0 * tau_min_n;
                res.cone_violation_detected = true;
                if (double(n) < (tau + 1.0) / 2.0) {
                    index_t next = family.stage2_regrow(n, tau);
                    if (budget && next > *budget) {
                        res.warning = true;
                        next = family.prev_embedding_index(n, *budget);
                    }
                    if (next > n) {
                        res.trace.push_back({n, ft, fl, tau});
                        n = next;
                        grid = f.values_on_grid(n);
                        continue;
                    }
                    // Cannot grow within budget; try to finish at this n.
                }
            }
        }
        res.trace.push_back({n, ft, fl, tau});

        // Convergence test tau C_n h(n) Ftilde <= eps, cross-multiplied by
        // 1/C_n = 1 - tau h_plus(n) so it stays well-defined (and fails)
        // while 2n-2 <= tau right after a tau increase.
        const double lhs = tau * model.h(n) * ft;
        const double rhs = eps * (1.0 - tau * model.h_plus(n));
        if (lhs <= rhs) break;

        index_t target = n + 1;
        if (ft > 0.0) {
            const double ctilde = 1.0 + tau * model.h_minus(n);
            target = std::max(target, h_inverse(model, HKind::h, eps * ctilde / (tau * ft)));
        }
        index_t next = family.next_embedding_index(n, double(target));
        if (budget && next > *budget) {
            res.warning = true;
            next = family.prev_embedding_index(n, *budget);
            if (next <= n) break;  // pinned at the cap: return best effort
        }
        n = next;
        grid = f.values_on_grid(n);
    }

    res.answer = family.solve(n, grid);
    res.final_tau = tau;
    res.cost = f.evaluations() - start_evals;
    res.cost_nominal = n;
    return res;
}

// Closed-form cost sandwich for the requested engine and semi-norm. The
// spline families provide refined multi-stage bounds; otherwise the generic
// max(n_1, r h_{1,2}^{-1}(...)) forms are used.
template <ProblemFamily F>
CostBounds cost_bounds(EngineKind engine, const F& family, const ConeSpec& cone,
                       double seminorm, WhichNorm which, double eps,
                       std::optional<index_t> n_F = std::nullopt) {
    if (!(seminorm > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("cost_bounds: seminorm and eps must be positive");
    }
    const ErrorModel& model = family.model();
    const double tau = cone.tau;

    if (engine == EngineKind::multi_stage) {
        if constexpr (requires { family.multi_stage_cost_bounds(tau, seminorm, which, eps); }) {
            return family.multi_stage_cost_bounds(tau, seminorm, which, eps);
        } else {
            const index_t n1 = family.first_index(tau);
            CostBounds b;
            if (which == WhichNorm::F) {
                b.lower = std::max(n1, h_inverse(model, HKind::h, eps / seminorm));
                b.upper = std::max<index_t>(
                    n1, index_t(std::floor(model.r * double(h_inverse(
                            model, HKind::h2, cone.tau_min * eps / (tau * seminorm), cone)))));
            } else {
                b.lower = std::max(n1, h_inverse(model, HKind::h, eps / (tau * seminorm)));
                b.upper = std::max<index_t>(
                    n1, index_t(std::floor(model.r * double(h_inverse(
                            model, HKind::h1, eps / (tau * seminorm), cone)))));
            }
            return b;
        }
    }

    const index_t nf = n_F ? *n_F : family.first_index(tau);
    const InflationFactors infl = inflation_factors(model, cone, nf);
    CostBounds b;
    if (which == WhichNorm::F) {
        b.lower = nf + h_inverse(model, HKind::h, eps / seminorm);
        b.upper = nf + h_inverse(model, HKind::h,
                                 cone.tau_min * eps / (tau * infl.big_c_n * infl.c_n * seminorm));
    } else {
        b.lower = nf + h_inverse(model, HKind::h, eps / (tau * seminorm));
        b.upper = nf + h_inverse(model, HKind::h,
                                 eps / (tau * infl.big_c_n * infl.c_tilde_n * seminorm));
    }
    return b;
}

}  // namespace coneadapt
