#include "coneadapt/spline_family.hpp"

#include <algorithm>
#include <cmath>

#include "coneadapt/detail/spline_scale.hpp"
#include "coneadapt/kernels.hpp"

namespace coneadapt {
namespace {

constexpr std::size_t kChunk = 8192;

// Evaluate the spline at ascending query points already inside [0,1].
void spline_eval_sorted(index_t n, std::span<const double> vals, std::span<const double> xs,
                        std::span<double> out) {
    const double scale = double(n - 1);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double t = xs[k] * scale;
        index_t i = std::min<index_t>(index_t(t), n - 2);
        double w = t - double(i);
        out[k] = vals[std::size_t(i)] + w * (vals[std::size_t(i) + 1] - vals[std::size_t(i)]);
    }
}

}  // namespace

SplineApproximant::SplineApproximant(index_t n, std::vector<double> node_values)
    : n_(n), values_(std::move(node_values)) {
    if (n_ < 2 || index_t(values_.size()) != n_) {
        throw std::invalid_argument("SplineApproximant: need n >= 2 node values");
    }
}

double SplineApproximant::evaluate(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("SplineApproximant::evaluate: x outside [0,1]");
    }
    const double scale = double(n_ - 1);
    index_t i = std::min<index_t>(index_t(x * scale), n_ - 2);
    // Exact node hits return the stored value; guards against the cell
    // index landing one off after the multiply.
    const double xi = double(i) / scale;
    const double xi1 = double(i + 1) / scale;
    if (x == xi) return values_[std::size_t(i)];
    if (x == xi1) return values_[std::size_t(i) + 1];
    return scale * (values_[std::size_t(i)] * (xi1 - x) + values_[std::size_t(i) + 1] * (x - xi));
}

double linear_spline_eval(const SplineApproximant& approximant, double x) {
    return approximant.evaluate(x);
}

double ftilde_approx(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("ftilde_approx: need at least 2 samples");
    return kernels::active_backend().max_abs_increment_dev(samples.data(), n, double(n - 1),
                                                           samples[n - 1] - samples[0]);
}

std::optional<double> fnorm_lower_approx(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 3) return std::nullopt;
    const double scale = double(n - 1) * double(n - 1);
    return scale * kernels::active_backend().max_abs_second_diff(samples.data(), n);
}

LinfSplineFamily::LinfSplineFamily() : model_(detail::make_spline_error_model()) {}

SplineApproximant LinfSplineFamily::solve(index_t n, std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("solve: sample count mismatch");
    return SplineApproximant(n, std::vector<double>(samples.begin(), samples.end()));
}

double LinfSplineFamily::ftilde(index_t n, std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("ftilde: sample count mismatch");
    return ftilde_approx(samples);
}

std::optional<double> LinfSplineFamily::fnorm_lower(index_t n,
                                                    std::span<const double> samples) const {
    if (index_t(samples.size()) != n) throw std::invalid_argument("fnorm_lower: sample count mismatch");
    return fnorm_lower_approx(samples);
}

index_t LinfSplineFamily::first_index(double tau) const { return detail::spline_first_index(tau); }

index_t LinfSplineFamily::next_embedding_index(index_t n, double target) const {
    return detail::spline_next_embedding(n, target);
}

index_t LinfSplineFamily::prev_embedding_index(index_t n, index_t cap) const {
    return detail::spline_prev_embedding(n, cap);
}

index_t LinfSplineFamily::stage2_regrow(index_t n, double tau) const {
    return detail::spline_stage2_regrow(n, tau);
}

CostBounds LinfSplineFamily::multi_stage_cost_bounds(double tau, double seminorm,
                                                     WhichNorm which, double eps) const {
    return detail::spline_multi_stage_bounds(tau, seminorm, which, eps);
}

RunResult<SplineApproximant> approximate_adaptive(SampledFunction& f, double eps, double tau,
                                                  std::optional<index_t> budget) {
    if (!(tau >= 2.0)) throw std::invalid_argument("approximate_adaptive: tau must be >= 2");
    static const LinfSplineFamily family;
    return run_multi_stage(family, ConeSpec{tau, 2.0, std::nullopt}, f, eps, budget,
                           TauPolicy::inflate);
}

double sup_error_on_grid(const RealFunction& f, const SplineApproximant& approximant,
                         index_t grid_size, std::span<const double> extra_points) {
    if (grid_size < 1) throw std::invalid_argument("sup_error_on_grid: grid_size must be >= 1");
    const auto& be = kernels::active_backend();
    const index_t n = approximant.size();
    const auto vals = approximant.node_values();

    double sup = 0.0;
    std::vector<double> xs(kChunk), fv(kChunk), sv(kChunk);

    // Uniform grid pass.
    for (index_t start = 0; start <= grid_size; start += index_t(kChunk)) {
        const std::size_t len = std::size_t(std::min<index_t>(index_t(kChunk), grid_size + 1 - start));
        for (std::size_t k = 0; k < len; ++k) {
            xs[k] = double(start + index_t(k)) / double(grid_size);
        }
        f.eval({xs.data(), len}, {fv.data(), len});
        spline_eval_sorted(n, vals, {xs.data(), len}, {sv.data(), len});
        sup = std::max(sup, be.max_abs_diff(fv.data(), sv.data(), len));
    }

    // Node pass: the spline equals its node values there, so compare f at
    // the nodes against them directly.
    for (index_t start = 0; start < n; start += index_t(kChunk)) {
        const std::size_t len = std::size_t(std::min<index_t>(index_t(kChunk), n - start));
        for (std::size_t k = 0; k < len; ++k) {
            xs[k] = double(start + index_t(k)) / double(n - 1);
        }
        f.eval({xs.data(), len}, {fv.data(), len});
        sup = std::max(sup, be.max_abs_diff(fv.data(), vals.data() + std::size_t(start), len));
    }

    for (double x : extra_points) {
        if (x < 0.0 || x > 1.0) continue;
        sup = std::max(sup, std::fabs(f(x) - approximant.evaluate(x)));
    }
    return sup;
}

index_t approx_lower_bound(BoundKind which, double sigma_or_tau, double s, double eps) {
    if (!(s > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("approx_lower_bound: s and eps must be positive");
    }
    if (which == BoundKind::ball) {
        return detail::g_inverse(eps / std::min(s, sigma_or_tau));
    }
    const double tau = sigma_or_tau;
    if (!(tau > 2.0)) throw std::invalid_argument("approx_lower_bound: cone case needs tau > 2");
    return detail::g_inverse(2.0 * tau * eps / (s * (tau - 2.0)));
}

}  // namespace coneadapt
