#include "coneadapt/sampled_function.hpp"

#include <numeric>
#include <utility>

namespace coneadapt {
namespace {

constexpr std::size_t kChunk = 8192;

}  // namespace

SampledFunction::SampledFunction(RealFunction f) : f_(std::move(f)) {}

SampledFunction::SampledFunction(std::function<double(double)> scalar)
    : f_{std::move(scalar), {}} {}

double SampledFunction::operator()(double x) {
    ++evals_;
    return f_.scalar(x);
}

void SampledFunction::eval_points(std::span<const double> xs, std::span<double> out) {
    evals_ += static_cast<index_t>(xs.size());
    for (std::size_t start = 0; start < xs.size(); start += kChunk) {
        std::size_t len = std::min(kChunk, xs.size() - start);
        f_.eval(xs.subspan(start, len), out.subspan(start, len));
    }
}

std::span<const double> SampledFunction::values_on_grid(index_t n) {
    if (n < 2) throw std::invalid_argument("values_on_grid: need n >= 2");
    if (n == n_) return values_;

    const double denom = static_cast<double>(n - 1);

    if (n_ == 0) {
        values_.resize(static_cast<std::size_t>(n));
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (index_t i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / denom;
        eval_points(xs, values_);
        n_ = n;
        return values_;
    }

    std::vector<double> next(static_cast<std::size_t>(n));
    std::vector<double> xs;
    std::vector<index_t> fresh;
    xs.reserve(kChunk);
    fresh.reserve(kChunk);

    // Shared abscissae: j/(n-1) coincides with a cached node exactly when
    // j is a multiple of (n-1)/gcd(n-1, n_-1); per-index division keeps
    // the coordinates bit-identical across grids.
    const index_t g = std::gcd(n - 1, n_ - 1);
    const index_t stride_new = (n - 1) / g;
    const index_t stride_old = (n_ - 1) / g;

    auto flush = [&] {
        if (xs.empty()) return;
        std::vector<double> ys(xs.size());
        eval_points(xs, ys);
        for (std::size_t k = 0; k < fresh.size(); ++k) {
            next[static_cast<std::size_t>(fresh[k])] = ys[k];
        }
        xs.clear();
        fresh.clear();
    };

    for (index_t j = 0; j < n; ++j) {
        if (j % stride_new == 0) {
            next[static_cast<std::size_t>(j)] = values_[static_cast<std::size_t>((j / stride_new) * stride_old)];
        } else {
            xs.push_back(static_cast<double>(j) / denom);
            fresh.push_back(j);
            if (xs.size() == kChunk) flush();
        }
    }
    flush();

    values_ = std::move(next);
    n_ = n;
    return values_;
}

}  // namespace coneadapt
