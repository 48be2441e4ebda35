#pragma once

#include <cstddef>

namespace coneadapt::kernels {

// Inner-loop kernels shared by the estimators, the trapezoid rule and the
// bump evaluators. Each has a scalar reference implementation and, on
// x86-64, an AVX2 variant selected at runtime. The max-style kernels are
// bit-identical across backends (same per-element arithmetic, order-free
// reduction); the sum reductions may differ by reassociation rounding only.
struct Backend {
    // v[0]/2 + v[1] + ... + v[n-2] + v[n-1]/2  (composite trapezoid numerator)
    double (*trapezoid_weighted_sum)(const double* v, std::size_t n);
    // sum over i of |v[i+1] - v[i] - c|
    double (*abs_increment_dev_sum)(const double* v, std::size_t n, double c);
    // sum over i of |v[i] - 2 v[i+1] + v[i+2]|
    double (*abs_second_diff_sum)(const double* v, std::size_t n);
    // max over i of |s*(v[i+1] - v[i]) - c|
    double (*max_abs_increment_dev)(const double* v, std::size_t n, double s, double c);
    // max over i of |v[i] - 2 v[i+1] + v[i+2]|
    double (*max_abs_second_diff)(const double* v, std::size_t n);
    // max over i of |a[i] - b[i]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    // piecewise-quadratic bump b*(4a^2 + u^2 - (u+a)|u+a| + (u-a)|u-a|),
    // u = x - z, zero outside |u| <= 2a
    void (*bump_eval)(const double* xs, double* out, std::size_t n, double a, double z, double b);
    const char* name;
};

const Backend& scalar_backend();

// nullptr when the build or the host CPU lacks AVX2.
const Backend* avx2_backend_if_available();

// Best backend for this host, chosen once.
const Backend& active_backend();

}  // namespace coneadapt::kernels
