#pragma once

#include <span>
#include <vector>

#include "coneadapt/types.hpp"

namespace coneadapt {

// A function on [0,1] wrapped with an evaluation counter and a node-value
// cache for the uniform grids x_i = i/(n-1). Refining to a grid whose
// interval count is a multiple of the current one reuses every cached
// value (the embedding assumption); other grid changes reuse the shared
// abscissae, which the uniform spacing makes exact in floating point.
// Confined to one run at a time; the counter is never shared.
class SampledFunction {
public:
    explicit SampledFunction(RealFunction f);
    SampledFunction(std::function<double(double)> scalar);

    // Values at x_i = i/(n-1), i = 0..n-1. The span is invalidated by the
    // next call. Only fresh abscissae count as evaluations.
    std::span<const double> values_on_grid(index_t n);

    // Counted single-point evaluation (no caching).
    double operator()(double x);

    index_t evaluations() const { return evals_; }
    index_t grid_size() const { return n_; }
    const RealFunction& function() const { return f_; }

private:
    void eval_points(std::span<const double> xs, std::span<double> out);

    RealFunction f_;
    std::vector<double> values_;
    index_t n_ = 0;
    index_t evals_ = 0;
};

}  // namespace coneadapt
