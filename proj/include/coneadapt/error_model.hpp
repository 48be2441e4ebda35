#pragma once

#include <functional>
#include <optional>

#include "coneadapt/types.hpp"

namespace coneadapt {

// Convergence description of a fixed-cost algorithm family {A_n}. h bounds
// the solution error, h_minus/h_plus bound the semi-norm estimator error
// from below/above; all three are non-increasing with infimum 0 on the
// index set {min_index, min_index+1, ...}. rho bounds the ratio of
// consecutive admissible indices and r is the embedding cost multiple.
struct ErrorModel {
    std::function<double(index_t)> h;
    std::function<double(index_t)> h_minus;
    std::function<double(index_t)> h_plus;
    index_t min_index = 2;
    double rho = 2.0;
    double r = 2.0;

    // Optional closed-form inverses; h_inverse falls back to a monotone
    // search when they are absent. h12_inverse takes (eps, tau) and covers
    // both h1 and h2 for models with h_minus == 0.
    std::function<index_t(double)> h_inverse_closed;
    std::function<index_t(double, double)> h12_inverse_closed;
};

enum class HKind { h, h1, h2 };

// Lemma-1 deflation/inflation factors at a fixed index:
//   c_n = 1 + tau_min h_-(n), ctilde_n = 1 + tau h_-(n),
//   C_n = 1/(1 - tau h_+(n)), finite only while h_+(n) < 1/tau.
struct InflationFactors {
    double c_n = 1.0;
    double c_tilde_n = 1.0;
    double big_c_n = 1.0;
};

// min{n in I : h_kind(n) <= eps}. For h1/h2 only indices with
// h_plus(n) < 1/tau are admissible; throws UnrepresentableIndexError when
// no admissible index exists within the representable range, and
// std::invalid_argument for eps <= 0 (or a missing cone for h1/h2).
index_t h_inverse(const ErrorModel& model, HKind which, double eps,
                  std::optional<ConeSpec> cone = std::nullopt);

// Throws InfiniteInflationError when h_plus(n) >= 1/tau.
InflationFactors inflation_factors(const ErrorModel& model, const ConeSpec& cone, index_t n);

// Data-driven necessary-condition estimate tau_min_n =
// F_n / (Ftilde_n + h_plus(n) F_n), with the 0/0 case defined as 0.
double tau_min_estimate(double ftilde_n, double fnorm_lower_n, double h_plus_n);

}  // namespace coneadapt
