#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "coneadapt/kernels.hpp"
#include "doctest.h"

using namespace coneadapt;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double scale) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * (2.0 * double(rng() >> 11) * 0x1.0p-53 - 1.0);
    return v;
}

double naive_trap(const std::vector<double>& v) {
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s;
}

}  // namespace

TEST_CASE("scalar kernels match naive implementations") {
    const auto& be = kernels::scalar_backend();
    std::mt19937_64 rng(7);
    auto v = random_values(rng, 137, 3.0);

    CHECK(be.trapezoid_weighted_sum(v.data(), v.size()) == doctest::Approx(naive_trap(v)));

    double c = 0.25;
    double s1 = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) s1 += std::fabs(v[i + 1] - v[i] - c);
    CHECK(be.abs_increment_dev_sum(v.data(), v.size(), c) == doctest::Approx(s1));

    double s2 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
        double t = std::fabs(v[i] - 2.0 * v[i + 1] + v[i + 2]);
        s2 += t;
        m2 = std::max(m2, t);
    }
    CHECK(be.abs_second_diff_sum(v.data(), v.size()) == doctest::Approx(s2));
    CHECK(be.max_abs_second_diff(v.data(), v.size()) == m2);
}

TEST_CASE("short inputs") {
    const auto& be = kernels::scalar_backend();
    double v[3] = {1.0, -2.0, 5.0};
    CHECK(be.abs_increment_dev_sum(v, 2, 0.0) == 3.0);
    CHECK(be.abs_second_diff_sum(v, 2) == 0.0);
    CHECK(be.max_abs_second_diff(v, 3) == 10.0);
    CHECK(be.max_abs_increment_dev(v, 2, 1.0, 0.0) == 3.0);
}

TEST_CASE("bump kernel is zero outside the support and exact inside") {
    const auto& be = kernels::scalar_backend();
    const double a = 0.1, z = 0.5, b = 250.0;
    std::vector<double> xs = {0.0, z - 2 * a, z - a, z, z + a, z + 2 * a, 1.0, 0.2999};
    std::vector<double> out(xs.size());
    be.bump_eval(xs.data(), out.data(), xs.size(), a, z, b);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out[2] == doctest::Approx(a * a * b));
    CHECK(out[3] == doctest::Approx(2 * a * a * b));  // peak value 2 a^2 b
    CHECK(out[4] == doctest::Approx(a * a * b));
    CHECK(out[6] == 0.0);
    CHECK(out[7] == 0.0);  // just outside [0.3, 0.7]
}

TEST_CASE("avx2 backend agrees with scalar") {
    const auto* avx2 = kernels::avx2_backend_if_available();
    if (!avx2) {
        MESSAGE("AVX2 not available on this host; dispatch falls back to scalar");
        CHECK(std::string(kernels::active_backend().name) == "scalar");
        return;
    }
    const auto& sc = kernels::scalar_backend();
    std::mt19937_64 rng(42);

    for (std::size_t n : {2u, 3u, 4u, 5u, 17u, 64u, 1001u, 4096u}) {
        auto v = random_values(rng, n, 10.0);
        auto w = random_values(rng, n, 10.0);
        const double c = 0.125, s = double(n - 1);

        // Sum reductions: reassociation only.
        CHECK(avx2->trapezoid_weighted_sum(v.data(), n) ==
              doctest::Approx(sc.trapezoid_weighted_sum(v.data(), n)).epsilon(1e-12));
        CHECK(avx2->abs_increment_dev_sum(v.data(), n, c) ==
              doctest::Approx(sc.abs_increment_dev_sum(v.data(), n, c)).epsilon(1e-12));
        CHECK(avx2->abs_second_diff_sum(v.data(), n) ==
              doctest::Approx(sc.abs_second_diff_sum(v.data(), n)).epsilon(1e-12));

        // Max reductions and the bump evaluator: bit-identical.
        CHECK(avx2->max_abs_increment_dev(v.data(), n, s, c) ==
              sc.max_abs_increment_dev(v.data(), n, s, c));
        CHECK(avx2->max_abs_second_diff(v.data(), n) == sc.max_abs_second_diff(v.data(), n));
        CHECK(avx2->max_abs_diff(v.data(), w.data(), n) == sc.max_abs_diff(v.data(), w.data(), n));

        std::vector<double> xs(n), o1(n), o2(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = double(i) / double(n);
        sc.bump_eval(xs.data(), o1.data(), n, 0.03, 0.41, 9259.259);
        avx2->bump_eval(xs.data(), o2.data(), n, 0.03, 0.41, 9259.259);
        for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == o2[i]);
    }
}
