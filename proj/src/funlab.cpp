#include "coneadapt/funlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coneadapt/kernels.hpp"
#include "json.hpp"

namespace coneadapt {
namespace {

double u01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Append [lo, hi) with local coefficients unless it is empty.
void push_piece(std::vector<double>& breaks, std::vector<PiecewiseQuadratic::Coeffs>& coeffs,
                double hi, PiecewiseQuadratic::Coeffs c) {
    if (hi <= breaks.back()) return;
    breaks.push_back(hi);
    coeffs.push_back(c);
}

TestFunction from_pq(PiecewiseQuadratic pq, std::string name) {
    TestFunction f;
    f.name = std::move(name);
    f.exact_integral = pq.integral();
    f.l1_deriv_dev = pq.l1_deriv_dev();
    f.var_deriv = pq.var_deriv();
    f.linf_deriv_dev = pq.linf_deriv_dev();
    f.linf_second = pq.linf_second();
    const auto& b = pq.breakpoints();
    f.kinks.assign(b.begin() + 1, b.end() - 1);
    f.fn.scalar = [pq](double x) { return pq(x); };
    f.pq = std::move(pq);
    return f;
}

PiecewiseQuadratic triangle_pq(double lo, double hi, double slope) {
    // slope up on [lo, mid], down on [mid, hi]; zero elsewhere.
    const double mid = 0.5 * (lo + hi);
    std::vector<double> breaks{0.0};
    std::vector<PiecewiseQuadratic::Coeffs> coeffs;
    push_piece(breaks, coeffs, lo, {0.0, 0.0, 0.0});
    push_piece(breaks, coeffs, mid, {0.0, slope, 0.0});
    push_piece(breaks, coeffs, hi, {slope * (mid - lo), -slope, 0.0});
    push_piece(breaks, coeffs, 1.0, {0.0, 0.0, 0.0});
    return PiecewiseQuadratic::from_pieces(std::move(breaks), std::move(coeffs));
}

// |f''| = 1 bump supported on [lo, hi], vanishing with its derivative at
// both ends; peak value (hi-lo)^2/16 at the midpoint.
PiecewiseQuadratic quad_bump_pq(double lo, double hi) {
    const double w = hi - lo;
    std::vector<double> breaks{0.0};
    std::vector<PiecewiseQuadratic::Coeffs> coeffs;
    push_piece(breaks, coeffs, lo, {0.0, 0.0, 0.0});
    push_piece(breaks, coeffs, lo + 0.25 * w, {0.0, 0.0, 0.5});
    push_piece(breaks, coeffs, lo + 0.75 * w, {w * w / 32.0, w / 4.0, -0.5});
    push_piece(breaks, coeffs, hi, {w * w / 32.0, -w / 4.0, 0.5});
    push_piece(breaks, coeffs, 1.0, {0.0, 0.0, 0.0});
    return PiecewiseQuadratic::from_pieces(std::move(breaks), std::move(coeffs));
}

bool pq_in_cone(const PiecewiseQuadratic& pq, Problem p, double tau) {
    if (p == Problem::integration) return pq.var_deriv() <= tau * pq.l1_deriv_dev();
    return pq.linf_second() <= tau * pq.linf_deriv_dev();
}

double simpson(const RealFunction& f, double lo, double hi, index_t m,
               std::vector<double>& xs, std::vector<double>& ys) {
    const index_t points = 2 * m + 1;
    xs.resize(std::size_t(points));
    ys.resize(std::size_t(points));
    const double h = (hi - lo) / double(2 * m);
    for (index_t i = 0; i < points; ++i) xs[std::size_t(i)] = lo + double(i) * h;
    xs.back() = hi;
    f.eval(xs, ys);
    double odd = 0.0, even = 0.0;
    for (index_t i = 1; i < points - 1; i += 2) odd += ys[std::size_t(i)];
    for (index_t i = 2; i < points - 1; i += 2) even += ys[std::size_t(i)];
    return (h / 3.0) * (ys.front() + ys.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x51ed270b9f2f4c38ULL));
}

double TestFunction::cone_ratio(Problem p) const {
    const double w = weak_norm(p);
    const double s = strong_norm(p);
    if (s == 0.0) return 0.0;
    return s / w;  // +inf for kinked f' under the approximation scale
}

BumpSpec BumpSpec::integration(double a, double z) {
    return BumpSpec{a, z, 1.0 / (4.0 * a * a * a), Problem::integration};
}

BumpSpec BumpSpec::approximation(double a, double z) {
    return BumpSpec{a, z, 1.0 / (2.0 * a * a), Problem::approximation};
}

TestFunction make_bump(const BumpSpec& spec) {
    const double a = spec.a, z = spec.z, b = spec.b;
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("make_bump: a and b must be positive");
    if (!(z - 2.0 * a >= 0.0 && z + 2.0 * a <= 1.0)) {
        throw std::invalid_argument("make_bump: support [z-2a, z+2a] must lie inside [0,1]");
    }

    // Pieces: f'' = 2b, -2b, 2b across [z-2a, z-a], [z-a, z+a], [z+a, z+2a].
    std::vector<double> breaks{0.0};
    std::vector<PiecewiseQuadratic::Coeffs> coeffs;
    push_piece(breaks, coeffs, z - 2.0 * a, {0.0, 0.0, 0.0});
    push_piece(breaks, coeffs, z - a, {0.0, 0.0, b});
    push_piece(breaks, coeffs, z + a, {a * a * b, 2.0 * a * b, -b});
    push_piece(breaks, coeffs, z + 2.0 * a, {a * a * b, -2.0 * a * b, b});
    push_piece(breaks, coeffs, 1.0, {0.0, 0.0, 0.0});

    TestFunction f;
    f.name = spec.family == Problem::integration ? "bump" : "bump-approx";
    f.pq = PiecewiseQuadratic::from_pieces(std::move(breaks), std::move(coeffs));
    // b is chosen so the integral is exactly 1 for the integration family.
    f.exact_integral =
        spec.family == Problem::integration ? 1.0 : 4.0 * a * a * a * b;
    f.l1_deriv_dev = 4.0 * a * a * b;
    f.var_deriv = 8.0 * a * b;
    f.linf_deriv_dev = 2.0 * a * b;
    f.linf_second = 2.0 * b;
    f.kinks = {z - 2.0 * a, z - a, z + a, z + 2.0 * a};
    f.fn.scalar = [a, z, b](double x) {
        double out;
        kernels::scalar_backend().bump_eval(&x, &out, 1, a, z, b);
        return out;
    };
    f.fn.batch = [a, z, b](std::span<const double> xs, std::span<double> out) {
        kernels::active_backend().bump_eval(xs.data(), out.data(), xs.size(), a, z, b);
    };
    return f;
}

BumpSpec sample_bump(std::mt19937_64& rng, Problem family) {
    const double a = std::pow(10.0, -4.0 + 3.0 * u01(rng));
    const double z = 2.0 * a + (1.0 - 4.0 * a) * u01(rng);
    return family == Problem::integration ? BumpSpec::integration(a, z)
                                          : BumpSpec::approximation(a, z);
}

BumpSpec sample_bump(std::uint64_t seed, Problem family) {
    std::mt19937_64 rng(splitmix64(seed));
    return sample_bump(rng, family);
}

double cone_probability(double tau, Problem family) {
    if (!(tau > 0.0)) throw std::invalid_argument("cone_probability: tau must be positive");
    const double l = family == Problem::integration ? std::log10(tau / 2.0) : std::log10(tau);
    return std::min(1.0, std::max(0.0, (l - 1.0) / 3.0));
}

FoolingPair make_fooling_pair(Problem problem, std::span<const double> design_nodes, double tau,
                              double s) {
    constexpr double tau_min = 2.0;
    if (!(tau > tau_min)) throw std::invalid_argument("make_fooling_pair: need tau > tau_min = 2");
    if (!(s > 0.0)) throw std::invalid_argument("make_fooling_pair: need s > 0");

    std::vector<double> xi(design_nodes.begin(), design_nodes.end());
    for (double x : xi) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument("make_fooling_pair: design nodes must lie in [0,1]");
        }
    }
    std::sort(xi.begin(), xi.end());

    // Widest gap between consecutive nodes, with 0 and 1 as sentinels;
    // at least 1/(n+1) wide by pigeonhole.
    double lo = 0.0, hi = 1.0, best = -1.0, prev = 0.0;
    for (std::size_t j = 0; j <= xi.size(); ++j) {
        double next = j < xi.size() ? xi[j] : 1.0;
        if (next - prev > best) {
            best = next - prev;
            lo = prev;
            hi = next;
        }
        prev = next;
    }
    if (!(best > 0.0)) throw std::invalid_argument("make_fooling_pair: degenerate design");

    FoolingPair pair;
    pair.design = std::move(xi);
    pair.gap_lo = lo;
    pair.gap_hi = hi;
    pair.c0 = s * (tau + tau_min) / (2.0 * tau * tau_min);
    pair.c1 = s * (tau - tau_min) / (2.0 * tau);

    if (problem == Problem::integration) {
        pair.f0 = from_pq(triangle_pq(0.0, 1.0, 1.0), "triangle-f0");
        pair.f1 = from_pq(triangle_pq(lo, hi, 0.25), "gap-triangle-f1");
    } else {
        // Parabola x(1-x): ||f0''|| = 2 = tau_min, ||f0' - f0(1) + f0(0)|| = 1.
        pair.f0 = from_pq(PiecewiseQuadratic::from_pieces({0.0, 1.0}, {{0.0, 1.0, -1.0}}),
                          "parabola-f0");
        pair.f1 = from_pq(quad_bump_pq(lo, hi), "gap-bump-f1");
    }
    pair.f_plus = from_pq(pair.f0.pq->scaled(pair.c0).plus(pair.f1.pq->scaled(pair.c1)),
                          "fooling-plus");
    pair.f_minus = from_pq(pair.f0.pq->scaled(pair.c0).plus(pair.f1.pq->scaled(-pair.c1)),
                           "fooling-minus");
    return pair;
}

NonconvexityWitness nonconvexity_witness(double tau, Problem family) {
    if (!(tau > 2.0)) throw std::invalid_argument("nonconvexity_witness: need tau > tau_min = 2");

    // In-cone and out-of-cone bumps with disjoint supports, packed to the
    // interval ends. Ratios: 2/a (integration), 1/a (approximation).
    double a_in, a_out;
    if (family == Problem::integration) {
        a_in = std::min(0.22, 10.0 / tau);
        a_out = std::min(0.005, 1.0 / (2.0 * tau));
    } else {
        a_in = std::min(0.2, 10.0 / tau);
        a_out = std::min(0.005, 1.0 / (4.0 * tau));
    }

    NonconvexityWitness w;
    w.family = family;
    w.tau = tau;
    auto spec_of = [&](double a, double z) {
        return family == Problem::integration ? BumpSpec::integration(a, z)
                                              : BumpSpec::approximation(a, z);
    };
    w.f_in = make_bump(spec_of(a_in, 2.0 * a_in));
    w.f_out = make_bump(spec_of(a_out, 1.0 - 2.0 * a_out));

    const double tau_in = w.f_in.cone_ratio(family);
    const double tau_out = w.f_out.cone_ratio(family);
    if (!(tau_in < tau && tau < tau_out)) {
        throw Error("nonconvexity_witness: bump ratios failed to bracket tau");
    }

    const double alpha = (tau - tau_in) * w.f_in.weak_norm(family);
    const double beta = (tau + tau_out) * w.f_out.weak_norm(family);
    PiecewiseQuadratic base = w.f_out.pq->scaled(alpha);
    w.f_plus = from_pq(base.plus(w.f_in.pq->scaled(beta)), "witness-plus");
    w.f_minus = from_pq(base.plus(w.f_in.pq->scaled(-beta)), "witness-minus");
    w.midpoint = from_pq(std::move(base), "witness-midpoint");

    w.plus_in_cone = pq_in_cone(*w.f_plus.pq, family, tau);
    w.minus_in_cone = pq_in_cone(*w.f_minus.pq, family, tau);
    w.midpoint_in_cone = pq_in_cone(*w.midpoint.pq, family, tau);
    return w;
}

TestFunction oscillatory_fluky(int k) {
    if (k < 1) throw std::invalid_argument("oscillatory_fluky: k must be >= 1");
    const double w = 2.0 * std::numbers::pi * double(k);
    TestFunction f;
    f.name = "fluky-" + std::to_string(k);
    f.fn.scalar = [w](double x) { return 1.0 - std::cos(w * x); };
    f.exact_integral = 1.0;
    f.l1_deriv_dev = 4.0 * double(k);          // w * (2/pi)
    f.var_deriv = 2.0 * w * double(2 * k);     // w^2 * (2/pi), i.e. 8 pi k^2
    f.linf_deriv_dev = w;
    f.linf_second = w * w;
    return f;
}

double reference_integral(const RealFunction& f, std::span<const double> kinks,
                          double target_accuracy) {
    if (!(target_accuracy > 0.0)) {
        throw std::invalid_argument("reference_integral: target accuracy must be positive");
    }
    std::vector<double> panels{0.0};
    for (double x : kinks) {
        if (x > 0.0 && x < 1.0) panels.push_back(x);
    }
    panels.push_back(1.0);
    std::sort(panels.begin(), panels.end());
    panels.erase(std::unique(panels.begin(), panels.end()), panels.end());

    const double per_panel = target_accuracy / double(panels.size() - 1);
    std::vector<double> xs, ys;
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
        const double lo = panels[p], hi = panels[p + 1];
        double s_prev = simpson(f, lo, hi, 2, xs, ys);
        double r_prev = s_prev;
        bool converged = false;
        for (index_t m = 4; m <= (index_t(1) << 21); m *= 2) {
            const double s = simpson(f, lo, hi, m, xs, ys);
            const double r = s + (s - s_prev) / 15.0;
            if (std::fabs(s - s_prev) / 15.0 <= per_panel * 0.5 &&
                std::fabs(r - r_prev) <= per_panel * 0.5) {
                total += r;
                converged = true;
                break;
            }
            s_prev = s;
            r_prev = r;
        }
        if (!converged) {
            throw OracleFailureError("reference_integral: refinement ladder did not converge");
        }
    }
    return total;
}

double reference_integral(const TestFunction& f, double target_accuracy) {
    return reference_integral(f.fn, f.kinks, target_accuracy);
}

void export_corpus_jsonl(std::ostream& os, std::span<const BumpSpec> corpus) {
    for (const BumpSpec& spec : corpus) {
        TestFunction f = make_bump(spec);
        nlohmann::json obj;
        obj["family"] = spec.family == Problem::integration ? "integration" : "approximation";
        obj["a"] = spec.a;
        obj["z"] = spec.z;
        obj["b"] = spec.b;
        if (spec.family == Problem::integration) obj["exact_integral"] = *f.exact_integral;
        obj["seminorms"] = {{"weak", f.weak_norm(spec.family)}, {"strong", f.strong_norm(spec.family)}};
        obj["cone_ratio"] = f.cone_ratio(spec.family);
        os << obj.dump() << '\n';
    }
}

}  // namespace coneadapt
