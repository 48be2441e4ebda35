#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coneadapt {

// Sample-size indices. The admissible index set is {2, 3, ...}; nested
// refinement can push indices toward 1e7 and beyond, so use a wide type.
using index_t = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No admissible index satisfies the requested error level.
struct UnrepresentableIndexError : Error {
    using Error::Error;
};

// h_plus(n) >= 1/tau: the inflation factor C_n is not finite at this n.
struct InfiniteInflationError : Error {
    using Error::Error;
};

// A reference oracle failed to converge; never silently wrong.
struct OracleFailureError : Error {
    using Error::Error;
};

// Cone parameters. tau_min is the floor constant of the weak/strong
// semi-norm inequality; the adaptive engines reject tau < tau_min.
struct ConeSpec {
    double tau = 0.0;
    double tau_min = 2.0;
    std::optional<double> sigma;  // ball radius, non-adaptive engine only
};

// A real-valued function on [0,1] with an optional vectorized evaluator.
struct RealFunction {
    std::function<double(double)> scalar;
    std::function<void(std::span<const double>, std::span<double>)> batch;

    double operator()(double x) const { return scalar(x); }

    void eval(std::span<const double> xs, std::span<double> out) const {
        if (batch) {
            batch(xs, out);
        } else {
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = scalar(xs[i]);
        }
    }
};

// One Stage-1 visit of an adaptive run: the index, both estimator values
// (fnorm_lower is absent for n < 3) and the cone constant in effect for
// that visit's convergence check.
struct RunStep {
    index_t n = 0;
    double ftilde = 0.0;
    std::optional<double> fnorm_lower;
    double tau = 0.0;
};

// Outcome of one engine run. `cost` counts distinct abscissae evaluated
// (nested grids reuse cached values); `cost_nominal` is the per-stage sum
// the two-stage cost theorem is stated in (n_F + n_A), and equals the
// final index for nested multi-stage runs.
template <class Output>
struct RunResult {
    Output answer{};
    index_t cost = 0;
    index_t cost_nominal = 0;
    std::vector<RunStep> trace;
    double final_tau = 0.0;
    bool warning = false;
    bool cone_violation_detected = false;
};

enum class Problem { integration, approximation };

enum class WhichNorm { F, Ftilde };

enum class TauPolicy { fixed, inflate };

enum class EngineKind { two_stage, multi_stage };

enum class BoundKind { ball, cone };

struct CostBounds {
    index_t lower = 0;
    index_t upper = 0;
};

}  // namespace coneadapt
