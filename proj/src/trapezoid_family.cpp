#include "coneadapt/trapezoid_family.hpp"

#include <cmath>

#include "coneadapt/detail/spline_scale.hpp"
#include "coneadapt/kernels.hpp"

namespace coneadapt {

double trapezoid(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    return kernels::active_backend().trapezoid_weighted_sum(samples.data(), n) /
           double(n - 1);
}

double ftilde_integration(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("ftilde_integration: need at least 2 samples");
    const double c = (samples[n - 1] - samples[0]) / double(n - 1);
    return kernels::active_backend().abs_increment_dev_sum(samples.data(), n, c);
}

std::optional<double> fnorm_lower_integration(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 3) return std::nullopt;
    return double(n - 1) * kernels::active_backend().abs_second_diff_sum(samples.data(), n);
}

TrapezoidFamily::TrapezoidFamily() : model_(detail::make_spline_error_model()) {}

double TrapezoidFamily::solve(index_t n, std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("solve: sample count mismatch");
    return trapezoid(samples);
}

double TrapezoidFamily::ftilde(index_t n, std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("ftilde: sample count mismatch");
    return ftilde_integration(samples);
}

std::optional<double> TrapezoidFamily::fnorm_lower(index_t n,
                                                   std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("fnorm_lower: sample count mismatch");
    return fnorm_lower_integration(samples);
}

index_t TrapezoidFamily::first_index(double tau) const { return detail::spline_first_index(tau); }

index_t TrapezoidFamily::next_embedding_index(index_t n, double target) const {
    return detail::spline_next_embedding(n, target);
}

index_t TrapezoidFamily::prev_embedding_index(index_t n, index_t cap) const {
    return detail::spline_prev_embedding(n, cap);
}

index_t TrapezoidFamily::stage2_regrow(index_t n, double tau) const {
    return detail::spline_stage2_regrow(n, tau);
}

CostBounds TrapezoidFamily::multi_stage_cost_bounds(double tau, double seminorm,
                                                    WhichNorm which, double eps) const {
    return detail::spline_multi_stage_bounds(tau, seminorm, which, eps);
}

RunResult<double> integrate_adaptive(SampledFunction& f, double eps, double tau,
                                     std::optional<index_t> budget) {
    if (!(tau >= 2.0)) throw std::invalid_argument("integrate_adaptive: tau must be >= 2");
    static const TrapezoidFamily family;
    return run_multi_stage(family, ConeSpec{tau, 2.0, std::nullopt}, f, eps, budget,
                           TauPolicy::inflate);
}

index_t integ_lower_bound(BoundKind which, double sigma_or_tau, double s, double eps) {
    if (!(s > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("integ_lower_bound: s and eps must be positive");
    }
    if (which == BoundKind::ball) {
        return detail::g_inverse(eps / std::min(s, sigma_or_tau));
    }
    const double tau = sigma_or_tau;
    if (!(tau > 2.0)) throw std::invalid_argument("integ_lower_bound: cone case needs tau > 2");
    return detail::g_inverse(2.0 * tau * eps / (s * (tau - 2.0)));
}

}  // namespace coneadapt
