#include "coneadapt/kernels.hpp"

#include <cmath>

namespace coneadapt::kernels {
namespace {

double trapezoid_weighted_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) s += v[i];
    return s + 0.5 * (v[0] + v[n - 1]);
}

double abs_increment_dev_sum(const double* v, std::size_t n, double c) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += std::fabs(v[i + 1] - v[i] - c);
    return s;
}

double abs_second_diff_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) s += std::fabs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
    return s;
}

double max_abs_increment_dev(const double* v, std::size_t n, double sc, double c) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double t = std::fabs(sc * (v[i + 1] - v[i]) - c);
        if (t > m) m = t;
    }
    return m;
}

double max_abs_second_diff(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        double t = std::fabs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
        if (t > m) m = t;
    }
    return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = std::fabs(a[i] - b[i]);
        if (t > m) m = t;
    }
    return m;
}

void bump_eval(const double* xs, double* out, std::size_t n, double a, double z, double b) {
    const double two_a = 2.0 * a;
    const double four_a2 = 4.0 * a * a;
    for (std::size_t i = 0; i < n; ++i) {
        double u = xs[i] - z;
        double up = u + a;
        double um = u - a;
        double val = b * (four_a2 + u * u - up * std::fabs(up) + um * std::fabs(um));
        out[i] = (std::fabs(u) <= two_a) ? val : 0.0;
    }
}

constexpr Backend kScalar{
    &trapezoid_weighted_sum, &abs_increment_dev_sum, &abs_second_diff_sum,
    &max_abs_increment_dev,  &max_abs_second_diff,   &max_abs_diff,
    &bump_eval,              "scalar",
};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

}  // namespace coneadapt::kernels
