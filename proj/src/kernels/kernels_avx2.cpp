#include "coneadapt/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace coneadapt::kernels {
namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

inline double hsum_pd(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmax_pd(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_max_pd(lo, hi);
    double a = _mm_cvtsd_f64(lo);
    double b = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    return a > b ? a : b;
}

double trapezoid_weighted_sum(const double* v, std::size_t n) {
    std::size_t i = 1;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 < n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    double s = hsum_pd(acc);
    for (; i + 1 < n; ++i) s += v[i];
    return s + 0.5 * (v[0] + v[n - 1]);
}

double abs_increment_dev_sum(const double* v, std::size_t n, double c) {
    if (n < 2) return 0.0;
    const __m256d vc = _mm256_set1_pd(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t m = n - 1;
    for (; i + 4 <= m; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i + 1), _mm256_loadu_pd(v + i));
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(d, vc)));
    }
    double s = hsum_pd(acc);
    for (; i < m; ++i) s += std::fabs(v[i + 1] - v[i] - c);
    return s;
}

double abs_second_diff_sum(const double* v, std::size_t n) {
    if (n < 3) return 0.0;
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t m = n - 2;
    for (; i + 4 <= m; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i),
                                  _mm256_mul_pd(two, _mm256_loadu_pd(v + i + 1)));
        acc = _mm256_add_pd(acc, abs_pd(_mm256_add_pd(d, _mm256_loadu_pd(v + i + 2))));
    }
    double s = hsum_pd(acc);
    for (; i < m; ++i) s += std::fabs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
    return s;
}

double max_abs_increment_dev(const double* v, std::size_t n, double sc, double c) {
    if (n < 2) return 0.0;
    const __m256d vsc = _mm256_set1_pd(sc);
    const __m256d vc = _mm256_set1_pd(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t m = n - 1;
    for (; i + 4 <= m; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i + 1), _mm256_loadu_pd(v + i));
        acc = _mm256_max_pd(acc, abs_pd(_mm256_sub_pd(_mm256_mul_pd(vsc, d), vc)));
    }
    double mx = hmax_pd(acc);
    for (; i < m; ++i) {
        double t = std::fabs(sc * (v[i + 1] - v[i]) - c);
        if (t > mx) mx = t;
    }
    return mx;
}

double max_abs_second_diff(const double* v, std::size_t n) {
    if (n < 3) return 0.0;
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t m = n - 2;
    for (; i + 4 <= m; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i),
                                  _mm256_mul_pd(two, _mm256_loadu_pd(v + i + 1)));
        acc = _mm256_max_pd(acc, abs_pd(_mm256_add_pd(d, _mm256_loadu_pd(v + i + 2))));
    }
    double mx = hmax_pd(acc);
    for (; i < m; ++i) {
        double t = std::fabs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
        if (t > mx) mx = t;
    }
    return mx;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                      _mm256_loadu_pd(b + i))));
    }
    double mx = hmax_pd(acc);
    for (; i < n; ++i) {
        double t = std::fabs(a[i] - b[i]);
        if (t > mx) mx = t;
    }
    return mx;
}

void bump_eval(const double* xs, double* out, std::size_t n, double a, double z, double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vz = _mm256_set1_pd(z);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d two_a = _mm256_set1_pd(2.0 * a);
    const __m256d four_a2 = _mm256_set1_pd(4.0 * a * a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d u = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vz);
        __m256d up = _mm256_add_pd(u, va);
        __m256d um = _mm256_sub_pd(u, va);
        // same association as the scalar kernel: ((4a^2 + u*u) - up|up|) + um|um|
        __m256d val = _mm256_add_pd(four_a2, _mm256_mul_pd(u, u));
        val = _mm256_sub_pd(val, _mm256_mul_pd(up, abs_pd(up)));
        val = _mm256_add_pd(val, _mm256_mul_pd(um, abs_pd(um)));
        val = _mm256_mul_pd(vb, val);
        __m256d inside = _mm256_cmp_pd(abs_pd(u), two_a, _CMP_LE_OQ);
        _mm256_storeu_pd(out + i, _mm256_and_pd(val, inside));
    }
    const double ta = 2.0 * a;
    const double fa2 = 4.0 * a * a;
    for (; i < n; ++i) {
        double u = xs[i] - z;
        double up = u + a;
        double um = u - a;
        double val = b * (fa2 + u * u - up * std::fabs(up) + um * std::fabs(um));
        out[i] = (std::fabs(u) <= ta) ? val : 0.0;
    }
}

constexpr Backend kAvx2{
    &trapezoid_weighted_sum, &abs_increment_dev_sum, &abs_second_diff_sum,
    &max_abs_increment_dev,  &max_abs_second_diff,   &max_abs_diff,
    &bump_eval,              "avx2",
};

}  // namespace

const Backend* detail_avx2_backend() { return &kAvx2; }

}  // namespace coneadapt::kernels

#else

namespace coneadapt::kernels {
const Backend* detail_avx2_backend() { return nullptr; }
}  // namespace coneadapt::kernels

#endif
