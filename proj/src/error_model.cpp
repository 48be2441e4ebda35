#include "coneadapt/error_model.hpp"

#include <cmath>
#include <limits>

namespace coneadapt {
namespace {

// Hard ceiling for index searches; closed forms may exceed it, a search
// that reaches it reports the index set as exhausted.
constexpr index_t kSearchLimit = index_t{1} << 48;

// Smallest n >= lo with value(n) <= eps, assuming value is non-increasing.
// Exponential bracket then binary search.
std::optional<index_t> monotone_inverse(const std::function<double(index_t)>& value,
                                        index_t lo, double eps) {
    if (value(lo) <= eps) return lo;
    index_t below = lo;         // value(below) > eps
    index_t above = 0;          // value(above) <= eps, once found
    index_t step = 1;
    while (true) {
        index_t cand = below + step;
        if (cand > kSearchLimit) return std::nullopt;
        if (value(cand) <= eps) {
            above = cand;
            break;
        }
        below = cand;
        step *= 2;
    }
    while (above - below > 1) {
        index_t mid = below + (above - below) / 2;
        if (value(mid) <= eps) {
            above = mid;
        } else {
            below = mid;
        }
    }
    return above;
}

// Closed forms are exact in real arithmetic but computed in doubles; nudge
// the candidate so it is the true minimal index for `value`.
index_t fixup_candidate(const std::function<double(index_t)>& value, index_t lo,
                        index_t cand, double eps) {
    if (cand < lo) cand = lo;
    while (value(cand) > eps) ++cand;
    while (cand > lo && value(cand - 1) <= eps) --cand;
    return cand;
}

}  // namespace

index_t h_inverse(const ErrorModel& model, HKind which, double eps,
                  std::optional<ConeSpec> cone) {
    if (!(eps > 0.0)) throw std::invalid_argument("h_inverse: eps must be positive");

    if (which == HKind::h) {
        if (model.h_inverse_closed) {
            return fixup_candidate(model.h, model.min_index, model.h_inverse_closed(eps), eps);
        }
        auto n = monotone_inverse(model.h, model.min_index, eps);
        if (!n) throw UnrepresentableIndexError("h_inverse: no admissible index reaches eps");
        return *n;
    }

    if (!cone) throw std::invalid_argument("h_inverse: h1/h2 require a cone");
    const double tau = cone->tau;
    const double tau_min = cone->tau_min;

    // h1(n) = C_n ctilde_n h(n), h2(n) = C_n c_n h(n); admissible only
    // where h_plus(n) < 1/tau.
    auto value = [&](index_t n) -> double {
        double hp = model.h_plus(n);
        if (!(tau * hp < 1.0)) return std::numeric_limits<double>::infinity();
        double deflate = 1.0 + (which == HKind::h1 ? tau : tau_min) * model.h_minus(n);
        return deflate * model.h(n) / (1.0 - tau * hp);
    };

    // First admissible index: smallest n with h_plus(n) < 1/tau.
    auto first = monotone_inverse([&](index_t n) { return tau * model.h_plus(n); },
                                  model.min_index, std::nextafter(1.0, 0.0));
    if (!first) throw UnrepresentableIndexError("h_inverse: no index with h_plus(n) < 1/tau");

    if (model.h12_inverse_closed) {
        index_t cand = model.h12_inverse_closed(eps, tau);
        return fixup_candidate(value, *first, cand, eps);
    }
    auto n = monotone_inverse(value, *first, eps);
    if (!n) throw UnrepresentableIndexError("h_inverse: no admissible index reaches eps");
    return *n;
}

InflationFactors inflation_factors(const ErrorModel& model, const ConeSpec& cone, index_t n) {
    if (n < model.min_index) throw std::invalid_argument("inflation_factors: n below index set");
    const double hm = model.h_minus(n);
    const double hp = model.h_plus(n);
    if (!(cone.tau * hp < 1.0)) {
        throw InfiniteInflationError("inflation_factors: h_plus(n) >= 1/tau, n too small for this cone");
    }
    InflationFactors f;
    f.c_n = 1.0 + cone.tau_min * hm;
    f.c_tilde_n = 1.0 + cone.tau * hm;
    f.big_c_n = 1.0 / (1.0 - cone.tau * hp);
    return f;
}

double tau_min_estimate(double ftilde_n, double fnorm_lower_n, double h_plus_n) {
    if (ftilde_n < 0.0 || fnorm_lower_n < 0.0 || h_plus_n < 0.0) {
        throw std::invalid_argument("tau_min_estimate: inputs must be non-negative");
    }
    if (fnorm_lower_n == 0.0) return 0.0;  // covers the 0/0 convention
    return fnorm_lower_n / (ftilde_n + h_plus_n * fnorm_lower_n);
}

}  // namespace coneadapt
