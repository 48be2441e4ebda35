#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coneadapt/engine.hpp"
#include "coneadapt/error_model.hpp"
#include "coneadapt/sampled_function.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// Continuous piecewise-linear interpolant of n node values at the uniform
// nodes x_i = i/(n-1). evaluate() reproduces stored node values exactly.
class SplineApproximant {
public:
    SplineApproximant() = default;
    SplineApproximant(index_t n, std::vector<double> node_values);

    // Piecewise-linear interpolation; throws std::invalid_argument outside [0,1].
    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }

    index_t size() const { return n_; }
    std::span<const double> node_values() const { return values_; }

private:
    index_t n_ = 0;
    std::vector<double> values_;
};

double linear_spline_eval(const SplineApproximant& approximant, double x);

// Weak semi-norm estimator max_i |(n-1)[f(x_{i+1})-f(x_i)] - f(1) + f(0)|;
// never overestimates ||f' - f(1) + f(0)||_inf.
double ftilde_approx(std::span<const double> samples);

// Strong semi-norm lower estimator (n-1)^2 max_i |f(x_i)-2f(x_{i+1})+f(x_{i+2})|,
// a lower bound on ||f''||_inf; disengaged for n < 3.
std::optional<double> fnorm_lower_approx(std::span<const double> samples);

// L-infinity recovery by linear splines on nested uniform grids; identical
// error coefficients to the integration family.
class LinfSplineFamily {
public:
    using output_type = SplineApproximant;

    LinfSplineFamily();

    const ErrorModel& model() const { return model_; }
    double tau_min() const { return 2.0; }

    SplineApproximant solve(index_t n, std::span<const double> samples) const;
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

// Adaptive univariate function recovery; for f in the cone the returned
// spline satisfies ||f - spline||_inf <= eps.
RunResult<SplineApproximant> approximate_adaptive(SampledFunction& f, double eps, double tau,
                                                  std::optional<index_t> budget = 10'000'000);

// max |f(t) - approximant(t)| over the uniform grid of grid_size+1 points
// unioned with the spline nodes and any extra abscissae (e.g. kink points).
double sup_error_on_grid(const RealFunction& f, const SplineApproximant& approximant,
                         index_t grid_size, std::span<const double> extra_points = {});

// Same closed forms as integ_lower_bound; the fooling bump gives the
// identical g(n) = 1/(16(n+1)^2).
index_t approx_lower_bound(BoundKind which, double sigma_or_tau, double s, double eps);

}  // namespace coneadapt
