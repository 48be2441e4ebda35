#pragma once

#include <array>
#include <vector>

#include "coneadapt/types.hpp"

namespace coneadapt {

// Exact piecewise-quadratic functions on [0,1]: breakpoints
// 0 = b_0 < ... < b_m = 1 and q(x) = c0 + c1 (x - b_i) + c2 (x - b_i)^2 on
// [b_i, b_{i+1}]. Closed under addition and scaling, with closed-form
// integrals and semi-norms; this is the exact-metadata backbone for the
// test-function generators and the estimator soundness oracles.
class PiecewiseQuadratic {
public:
    using Coeffs = std::array<double, 3>;  // c0, c1, c2

    PiecewiseQuadratic();  // identically zero
    static PiecewiseQuadratic from_pieces(std::vector<double> breakpoints,
                                          std::vector<Coeffs> coefficients);

    double operator()(double x) const;
    // One-sided from the right except at x = 1.
    double derivative(double x) const;

    PiecewiseQuadratic plus(const PiecewiseQuadratic& other) const;
    PiecewiseQuadratic scaled(double c) const;

    double integral() const;

    // Var(f'): within-piece |2 c2| * len plus the derivative jumps at
    // interior breakpoints.
    double var_deriv() const;

    // ||f' - (f(1) - f(0))||_1.
    double l1_deriv_dev() const;

    // ||f' - (f(1) - f(0))||_inf.
    double linf_deriv_dev() const;

    // ||f''||_inf = max |2 c2|; +inf when f' jumps at an interior breakpoint.
    double linf_second() const;

    double sup_abs() const;

    const std::vector<double>& breakpoints() const { return breaks_; }

    // Derivative mismatches below kJumpNoise times the global slope scale
    // are treated as plus()/shift rounding noise, not kinks.
    static constexpr double kJumpNoise = 1e-9;

private:
    std::size_t piece_index(double x) const;
    double slope_scale() const;
    double slope_jump(std::size_t i) const;

    std::vector<double> breaks_;
    std::vector<Coeffs> coeffs_;
};

}  // namespace coneadapt
