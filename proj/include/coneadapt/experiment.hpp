#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "coneadapt/heuristic.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// Monte Carlo protocol: n_functions random bumps, the adaptive algorithm
// run per tau with tolerance eps and cost budget. Deterministic for a
// fixed seed regardless of worker count.
struct ExperimentConfig {
    Problem problem = Problem::integration;
    index_t n_functions = 10000;
    double eps = 1e-8;
    std::vector<double> tau_list{10.0, 100.0, 1000.0};
    index_t budget = 10'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 0;  // 0: hardware concurrency
};

// Per-tau outcome counts. The four outcome cells partition the runs;
// guarantee_violations counts failures of finally-in-cone, no-warning runs
// (always expected to be zero).
struct ExperimentRow {
    double tau = 0.0;
    index_t n_functions = 0;
    long long in_cone_initial = 0;
    long long in_cone_final = 0;
    long long success_no_warning = 0;
    long long success_warning = 0;
    long long failure_no_warning = 0;
    long long failure_warning = 0;
    long long guarantee_violations = 0;

    double frac(long long count) const { return double(count) / double(n_functions); }
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

void write_report_csv(const ExperimentReport& report, std::ostream& os);
void write_report_json(const ExperimentReport& report, std::ostream& os);

// The five-row cost table for one (tau, eps, seminorm) instance: fooling
// lower bounds for balls and cones, the non-adaptive cost at ball radius
// sigma, and the adaptive cost sandwich.
struct BoundsRow {
    std::string label;
    double value = 0.0;
};

std::vector<BoundsRow> bounds_report(Problem problem, double tau, double eps, double seminorm,
                                     WhichNorm which, double sigma = 1.0);

void write_bounds_csv(const std::vector<BoundsRow>& rows, std::ostream& os);

// Heuristic vs guaranteed run on the oscillatory fluky integrand.
struct FoolReport {
    int k = 0;
    double eps = 0.0;
    double tau = 0.0;
    double cone_ratio = 0.0;  // 2 pi k
    double true_integral = 1.0;
    HeuristicResult heuristic;
    double heuristic_true_error = 0.0;
    double adaptive_answer = 0.0;
    double adaptive_true_error = 0.0;
    index_t adaptive_cost = 0;
    bool adaptive_warning = false;
};

FoolReport fool_demo(int k, double eps, double tau, index_t budget = 10'000'000);

void write_fool_json(const FoolReport& report, std::ostream& os);

}  // namespace coneadapt
