#pragma once

#include "coneadapt/sampled_function.hpp"
#include "coneadapt/types.hpp"

namespace coneadapt {

// Outcome of the conventional doubling heuristic. stopped_at is always of
// the form 2^i + 1; claimed_error is the Richardson estimate at the stop.
struct HeuristicResult {
    double answer = 0.0;
    index_t cost = 0;
    index_t stopped_at = 0;
    double claimed_error = 0.0;
    bool warning = false;  // doubling ladder exhausted
};

// Textbook trapezoid doubling on n_i = 2^i + 1 points: stops at the first
// i >= 1 with |T_{n_i} - T_{n_{i-1}}|/3 <= eps. No guarantee — this is the
// stopping rule the adaptive engines are demonstrated against.
HeuristicResult heuristic_trapezoid(SampledFunction& f, double eps, int max_doublings = 22);

}  // namespace coneadapt
