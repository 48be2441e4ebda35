#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "coneadapt/piecewise.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// Parametric bump test function: support [z-2a, z+2a] inside [0,1], height
// scale b = 1/(4a^3) for the integration family (unit integral) or
// b = 1/(2a^2) for the approximation family.
struct BumpSpec {
    double a = 0.1;
    double z = 0.5;
    double b = 250.0;
    Problem family = Problem::integration;

    static BumpSpec integration(double a, double z);
    static BumpSpec approximation(double a, double z);
};

// A test function with exact analytic metadata. Semi-norms are stored for
// both problem scales; linf_second is +inf when f' has kinks.
struct TestFunction {
    RealFunction fn;
    std::string name;
    std::optional<double> exact_integral;
    double l1_deriv_dev = 0.0;
    double var_deriv = 0.0;
    double linf_deriv_dev = 0.0;
    double linf_second = 0.0;
    std::vector<double> kinks;
    std::optional<PiecewiseQuadratic> pq;

    double weak_norm(Problem p) const {
        return p == Problem::integration ? l1_deriv_dev : linf_deriv_dev;
    }
    double strong_norm(Problem p) const {
        return p == Problem::integration ? var_deriv : linf_second;
    }
    double cone_ratio(Problem p) const;
    bool in_cone(Problem p, double tau) const { return strong_norm(p) <= tau * weak_norm(p); }
};

// Piecewise-quadratic bump with exact integral and semi-norms; rejects
// supports that stick out of [0,1].
TestFunction make_bump(const BumpSpec& spec);

// log10(a) ~ U[-4,-1], z ~ U[2a, 1-2a]; deterministic per seed and
// independent of platform (no std distributions involved).
BumpSpec sample_bump(std::uint64_t seed, Problem family);
BumpSpec sample_bump(std::mt19937_64& rng, Problem family);

// Probability that a sampled bump lies in the cone:
// integration min(1, max(0, (log10(tau/2)-1)/3)),
// approximation min(1, max(0, (log10(tau)-1)/3)).
double cone_probability(double tau, Problem family);

// Fooling construction against a point-evaluation design: f1 vanishes at
// every design node with solution magnitude >= g(n) = 1/(16(n+1)^2), f0
// sits in the cone interior, and f± = c0 f0 ± c1 f1 are indistinguishable
// to the design while lying in the cone with strong norm <= s.
struct FoolingPair {
    TestFunction f0;
    TestFunction f1;
    TestFunction f_plus;
    TestFunction f_minus;
    double c0 = 0.0;
    double c1 = 0.0;
    double gap_lo = 0.0;
    double gap_hi = 1.0;
    std::vector<double> design;

    static double g(index_t n) { return 1.0 / (16.0 * double(n + 1) * double(n + 1)); }
};

FoolingPair make_fooling_pair(Problem problem, std::span<const double> design_nodes, double tau,
                              double s = 1.0);

// Witness that the cone is not convex: f± in the cone, midpoint
// (f+ + f-)/2 = (tau - tau_in) ||f_in||~ f_out outside it. Verdicts are
// computed from exact piecewise semi-norms.
struct NonconvexityWitness {
    Problem family = Problem::integration;
    double tau = 0.0;
    TestFunction f_in;
    TestFunction f_out;
    TestFunction f_plus;
    TestFunction f_minus;
    TestFunction midpoint;
    bool plus_in_cone = false;
    bool minus_in_cone = false;
    bool midpoint_in_cone = true;
};

NonconvexityWitness nonconvexity_witness(double tau, Problem family = Problem::integration);

// f(x) = 1 - cos(2 pi k x): integral exactly 1, zero at every multiple of
// 1/k, cone ratio 2 pi k. The trapezoid value is 0 whenever (n-1) divides
// k, which is what fools doubling heuristics.
TestFunction oscillatory_fluky(int k);

// Richardson-extrapolated composite Simpson on kink-aligned panels.
// Throws OracleFailureError if the refinement ladder does not converge.
double reference_integral(const RealFunction& f, std::span<const double> kinks,
                          double target_accuracy);
double reference_integral(const TestFunction& f, double target_accuracy);

// One JSON object per line: {family, a, z, b, exact_integral?, seminorms, cone_ratio}.
void export_corpus_jsonl(std::ostream& os, std::span<const BumpSpec> corpus);

// SplitMix64; used to derive independent per-function RNG streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace coneadapt
