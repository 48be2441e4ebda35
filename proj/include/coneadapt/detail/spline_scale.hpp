#pragma once

#include <cmath>

#include "coneadapt/error_model.hpp"
#include "coneadapt/types.hpp"

// Index arithmetic and error coefficients shared by the trapezoid and
// linear-spline families: uniform nodes x_i = i/(n-1) on I = {2, 3, ...},
// h(n) = 1/(8(n-1)^2), h_-(n) = 0, h_+(n) = 1/(2n-2), embedding
// n -> 1 + k(n-1), r = rho = 2.
namespace coneadapt::detail {

inline ErrorModel make_spline_error_model() {
    ErrorModel m;
    m.h = [](index_t n) { return 1.0 / (8.0 * double(n - 1) * double(n - 1)); };
    m.h_minus = [](index_t) { return 0.0; };
    m.h_plus = [](index_t n) { return 1.0 / (2.0 * double(n) - 2.0); };
    m.min_index = 2;
    m.rho = 2.0;
    m.r = 2.0;
    m.h_inverse_closed = [](double eps) {
        return index_t(std::ceil(std::sqrt(1.0 / (8.0 * eps)))) + 1;
    };
    m.h12_inverse_closed = [](double eps, double tau) {
        return 1 + index_t(std::ceil(std::sqrt(tau / (8.0 * eps) + tau * tau / 16.0) + tau / 4.0));
    };
    return m;
}

inline index_t spline_first_index(double tau) {
    return index_t(std::ceil((tau + 1.0) / 2.0)) + 1;
}

// Smallest index >= target into which the n-grid embeds (target may equal n).
inline index_t spline_next_embedding(index_t n, double target) {
    double k = std::ceil((target - 1.0) / double(n - 1));
    index_t ki = k < 1.0 ? 1 : index_t(k);
    while (double(1 + (n - 1) * ki) < target) ++ki;
    while (ki > 1 && double(1 + (n - 1) * (ki - 1)) >= target) --ki;
    return 1 + (n - 1) * ki;
}

// Largest index <= cap into which the n-grid embeds; may return n or less.
inline index_t spline_prev_embedding(index_t n, index_t cap) {
    index_t k = (cap - 1) / (n - 1);
    if (k < 1) k = 1;
    return 1 + (n - 1) * k;
}

// Stage-2 regrow after a tau increase: 1 + (n-1) ceil((tau+1)/(2n-2)).
inline index_t spline_stage2_regrow(index_t n, double tau) {
    double k = std::ceil((tau + 1.0) / (2.0 * double(n) - 2.0));
    index_t ki = k < 1.0 ? 1 : index_t(k);
    return 1 + (n - 1) * ki;
}

// Multi-stage cost sandwich in the refined closed forms:
// lower max(ceil((tau+1)/2), ceil(sqrt(s/(8 eps))))+1 for the strong norm
// (tau*s inside the root for the weak norm); upper sqrt(tau s/(4 eps))+tau+4
// resp. sqrt(tau s/(2 eps))+tau+4.
inline CostBounds spline_multi_stage_bounds(double tau, double seminorm, WhichNorm which,
                                            double eps) {
    if (!(seminorm > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("cost bounds need positive seminorm and eps");
    }
    const double s_low = which == WhichNorm::F ? seminorm : tau * seminorm;
    const double denom = which == WhichNorm::F ? 4.0 : 2.0;
    CostBounds b;
    b.lower = std::max<index_t>(index_t(std::ceil((tau + 1.0) / 2.0)),
                                index_t(std::ceil(std::sqrt(s_low / (8.0 * eps))))) + 1;
    b.upper = index_t(std::floor(std::sqrt(tau * seminorm / (denom * eps)) + tau + 4.0));
    return b;
}

// g^{-1}(eps) = max{n >= 0 : g(n) > eps} + 1 for g(n) = 1/(16(n+1)^2),
// with max(empty) = -1. Closed form ceil(sqrt(1/(16 eps))) - 1, fixed up
// against the literal predicate so it matches a direct scan bit for bit.
inline index_t g_inverse(double eps) {
    auto g = [](index_t n) { return 1.0 / (16.0 * double(n + 1) * double(n + 1)); };
    index_t c = index_t(std::ceil(std::sqrt(1.0 / (16.0 * eps)))) - 1;  // candidate for max+1
    if (c < 0) c = 0;
    while (c > 0 && !(g(c - 1) > eps)) --c;
    while (g(c) > eps) ++c;
    return c;
}

}  // namespace coneadapt::detail
