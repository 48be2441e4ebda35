#pragma once

#include <optional>
#include <span>

#include "coneadapt/engine.hpp"
#include "coneadapt/error_model.hpp"
#include "coneadapt/sampled_function.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// Composite trapezoid value from n >= 2 equally spaced samples on [0,1]:
// (1/(2n-2)) [v_1 + 2 v_2 + ... + 2 v_{n-1} + v_n].
double trapezoid(std::span<const double> samples);

// Weak semi-norm estimator, sum_i |f(x_{i+1})-f(x_i) - (f(1)-f(0))/(n-1)|.
// Never overestimates ||f' - f(1) + f(0)||_1.
double ftilde_integration(std::span<const double> samples);

// Strong semi-norm lower estimator (n-1) sum_i |f(x_i)-2f(x_{i+1})+f(x_{i+2})|,
// a lower bound on Var(f'); undefined (disengaged) for n < 3.
std::optional<double> fnorm_lower_integration(std::span<const double> samples);

// Univariate integration on [0,1] by composite trapezoid rules over nested
// uniform grids: h(n) = 1/(8(n-1)^2), h_+(n) = 1/(2n-2), tau_min = 2.
class TrapezoidFamily {
public:
    using output_type = double;

    TrapezoidFamily();

    const ErrorModel& model() const { return model_; }
    double tau_min() const { return 2.0; }

    double solve(index_t n, std::span<const double> samples) const;
    double ftilde(index_t n, std::span<const double> samples) const;
    std::optional<double> fnorm_lower(index_t n, std::span<const double> samples) const;

    index_t first_index(double tau) const;
    index_t next_embedding_index(index_t n, double target) const;
    index_t prev_embedding_index(index_t n, index_t cap) const;
    index_t stage2_regrow(index_t n, double tau) const;

    CostBounds multi_stage_cost_bounds(double tau, double seminorm, WhichNorm which,
                                       double eps) const;

private:
    ErrorModel model_;
};

// Adaptive univariate integration: multi-stage engine on the trapezoid
// family with the tau-inflation policy, started at n_1 = ceil((tau+1)/2)+1.
// For f in the cone the answer satisfies |∫f - answer| <= eps.
RunResult<double> integrate_adaptive(SampledFunction& f, double eps, double tau,
                                     std::optional<index_t> budget = 10'000'000);

// Complexity lower bounds from the triangle fooling construction,
// g(n) = 1/(16(n+1)^2): ball g^{-1}(eps/min(s, sigma)), cone (tau > 2)
// g^{-1}(2 tau eps / (s (tau-2))).
index_t integ_lower_bound(BoundKind which, double sigma_or_tau, double s, double eps);

}  // namespace coneadapt
