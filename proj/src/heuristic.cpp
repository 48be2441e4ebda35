#include "coneadapt/heuristic.hpp"

#include <cmath>

#include "coneadapt/trapezoid_family.hpp"

namespace coneadapt {

HeuristicResult heuristic_trapezoid(SampledFunction& f, double eps, int max_doublings) {
    if (!(eps > 0.0)) throw std::invalid_argument("heuristic_trapezoid: eps must be positive");
    if (max_doublings < 1) throw std::invalid_argument("heuristic_trapezoid: need at least one doubling");

    const index_t start_evals = f.evaluations();
    double prev = trapezoid(f.values_on_grid(2));
    HeuristicResult res;
    for (int i = 1; i <= max_doublings; ++i) {
        const index_t n = (index_t(1) << i) + 1;
        const double cur = trapezoid(f.values_on_grid(n));
        res.answer = cur;
        res.stopped_at = n;
        res.claimed_error = std::fabs(cur - prev) / 3.0;
        if (res.claimed_error <= eps) {
            res.cost = f.evaluations() - start_evals;
            return res;
        }
        prev = cur;
    }
    res.warning = true;
    res.cost = f.evaluations() - start_evals;
    return res;
}

}  // namespace coneadapt
