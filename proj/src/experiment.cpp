#include "coneadapt/experiment.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "coneadapt/funlab.hpp"
#include "coneadapt/spline_family.hpp"
#include "coneadapt/trapezoid_family.hpp"
#include "json.hpp"

namespace coneadapt {
namespace {

constexpr index_t kSupGrid = index_t(1) << 17;

struct Cell {
    long long in_cone_initial = 0;
    long long in_cone_final = 0;
    long long success_no_warning = 0;
    long long success_warning = 0;
    long long failure_no_warning = 0;
    long long failure_warning = 0;
    long long guarantee_violations = 0;

    void merge(const Cell& o) {
        in_cone_initial += o.in_cone_initial;
        in_cone_final += o.in_cone_final;
        success_no_warning += o.success_no_warning;
        success_warning += o.success_warning;
        failure_no_warning += o.failure_no_warning;
        failure_warning += o.failure_warning;
        guarantee_violations += o.guarantee_violations;
    }
};

void run_one(const ExperimentConfig& cfg, const TestFunction& bump, double tau, Cell& cell) {
    SampledFunction sf(bump.fn);
    double err;
    double final_tau;
    bool warning;
    if (cfg.problem == Problem::integration) {
        auto run = integrate_adaptive(sf, cfg.eps, tau, cfg.budget);
        err = std::fabs(run.answer - *bump.exact_integral);
        final_tau = run.final_tau;
        warning = run.warning;
    } else {
        auto run = approximate_adaptive(sf, cfg.eps, tau, cfg.budget);
        err = sup_error_on_grid(bump.fn, run.answer, kSupGrid, bump.kinks);
        final_tau = run.final_tau;
        warning = run.warning;
    }
    const double ratio = bump.cone_ratio(cfg.problem);
    const bool success = err <= cfg.eps;
    const bool final_in_cone = ratio <= final_tau;

    if (ratio <= tau) ++cell.in_cone_initial;
    if (final_in_cone) ++cell.in_cone_final;
    if (success) {
        ++(warning ? cell.success_warning : cell.success_no_warning);
    } else {
        ++(warning ? cell.failure_warning : cell.failure_no_warning);
        if (final_in_cone && !warning) ++cell.guarantee_violations;
    }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_functions < 1) throw std::invalid_argument("run_experiment: need n_functions >= 1");
    if (cfg.tau_list.empty()) throw std::invalid_argument("run_experiment: empty tau list");

    unsigned workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, unsigned(cfg.n_functions));

    const std::size_t n_tau = cfg.tau_list.size();
    std::vector<std::vector<Cell>> partial(workers, std::vector<Cell>(n_tau));
    std::atomic<index_t> next{0};

    auto work = [&](unsigned w) {
        for (;;) {
            const index_t idx = next.fetch_add(1, std::memory_order_relaxed);
            if (idx >= cfg.n_functions) break;
            const BumpSpec spec = sample_bump(mix_seed(cfg.seed, std::uint64_t(idx)), cfg.problem);
            const TestFunction bump = make_bump(spec);
            for (std::size_t t = 0; t < n_tau; ++t) {
                run_one(cfg, bump, cfg.tau_list[t], partial[w][t]);
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    ExperimentReport report;
    report.config = cfg;
    report.rows.resize(n_tau);
    for (std::size_t t = 0; t < n_tau; ++t) {
        Cell total;
        for (unsigned w = 0; w < workers; ++w) total.merge(partial[w][t]);
        ExperimentRow& row = report.rows[t];
        row.tau = cfg.tau_list[t];
        row.n_functions = cfg.n_functions;
        row.in_cone_initial = total.in_cone_initial;
        row.in_cone_final = total.in_cone_final;
        row.success_no_warning = total.success_no_warning;
        row.success_warning = total.success_warning;
        row.failure_no_warning = total.failure_no_warning;
        row.failure_warning = total.failure_warning;
        row.guarantee_violations = total.guarantee_violations;
    }
    return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& os) {
    os << "problem,tau,n_functions,eps,budget,seed,"
          "prob_in_cone_initial,prob_in_cone_final,"
          "success_no_warning,success_warning,failure_no_warning,failure_warning,"
          "count_in_cone_initial,count_in_cone_final,"
          "count_success_no_warning,count_success_warning,"
          "count_failure_no_warning,count_failure_warning,guarantee_violations\n";
    const auto& cfg = report.config;
    char buf[640];
    for (const ExperimentRow& r : report.rows) {
        std::snprintf(buf, sizeof buf,
                      "%s,%.17g,%lld,%.17g,%lld,%llu,"
                      "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,"
                      "%lld,%lld,%lld,%lld,%lld,%lld,%lld\n",
                      cfg.problem == Problem::integration ? "integrate" : "approximate", r.tau,
                      static_cast<long long>(r.n_functions), cfg.eps,
                      static_cast<long long>(cfg.budget),
                      static_cast<unsigned long long>(cfg.seed), r.frac(r.in_cone_initial),
                      r.frac(r.in_cone_final), r.frac(r.success_no_warning),
                      r.frac(r.success_warning), r.frac(r.failure_no_warning),
                      r.frac(r.failure_warning), r.in_cone_initial, r.in_cone_final,
                      r.success_no_warning, r.success_warning, r.failure_no_warning,
                      r.failure_warning, r.guarantee_violations);
        os << buf;
    }
}

void write_report_json(const ExperimentReport& report, std::ostream& os) {
    nlohmann::json out;
    const auto& cfg = report.config;
    out["problem"] = cfg.problem == Problem::integration ? "integrate" : "approximate";
    out["n_functions"] = cfg.n_functions;
    out["eps"] = cfg.eps;
    out["budget"] = cfg.budget;
    out["seed"] = cfg.seed;
    out["rows"] = nlohmann::json::array();
    for (const ExperimentRow& r : report.rows) {
        nlohmann::json row;
        row["tau"] = r.tau;
        row["prob_in_cone_initial"] = r.frac(r.in_cone_initial);
        row["prob_in_cone_final"] = r.frac(r.in_cone_final);
        row["success_no_warning"] = r.frac(r.success_no_warning);
        row["success_warning"] = r.frac(r.success_warning);
        row["failure_no_warning"] = r.frac(r.failure_no_warning);
        row["failure_warning"] = r.frac(r.failure_warning);
        row["counts"] = {{"in_cone_initial", r.in_cone_initial},
                         {"in_cone_final", r.in_cone_final},
                         {"success_no_warning", r.success_no_warning},
                         {"success_warning", r.success_warning},
                         {"failure_no_warning", r.failure_no_warning},
                         {"failure_warning", r.failure_warning},
                         {"guarantee_violations", r.guarantee_violations}};
        out["rows"].push_back(std::move(row));
    }
    os << out.dump(2) << '\n';
}

std::vector<BoundsRow> bounds_report(Problem problem, double tau, double eps, double seminorm,
                                     WhichNorm which, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bounds_report: sigma must be positive");
    auto lower = problem == Problem::integration ? &integ_lower_bound : &approx_lower_bound;

    std::vector<BoundsRow> rows;
    rows.push_back({"ball_complexity_lower", double(lower(BoundKind::ball, sigma, seminorm, eps))});
    rows.push_back({"cone_complexity_lower", double(lower(BoundKind::cone, tau, seminorm, eps))});
    rows.push_back({"non_adaptive_cost",
                    double(index_t(std::ceil(std::sqrt(sigma / (8.0 * eps)))) + 1)});

    CostBounds sandwich;
    if (problem == Problem::integration) {
        sandwich = TrapezoidFamily().multi_stage_cost_bounds(tau, seminorm, which, eps);
    } else {
        sandwich = LinfSplineFamily().multi_stage_cost_bounds(tau, seminorm, which, eps);
    }
    rows.push_back({"adaptive_min_cost", double(sandwich.lower)});
    rows.push_back({"adaptive_max_cost", double(sandwich.upper)});
    return rows;
}

void write_bounds_csv(const std::vector<BoundsRow>& rows, std::ostream& os) {
    os << "bound,value\n";
    for (const BoundsRow& r : rows) os << r.label << ',' << r.value << '\n';
}

FoolReport fool_demo(int k, double eps, double tau, index_t budget) {
    const TestFunction fluky = oscillatory_fluky(k);

    FoolReport rep;
    rep.k = k;
    rep.eps = eps;
    rep.tau = tau;
    rep.cone_ratio = fluky.var_deriv / fluky.l1_deriv_dev;  // 2 pi k
    rep.true_integral = *fluky.exact_integral;

    SampledFunction hf(fluky.fn);
    rep.heuristic = heuristic_trapezoid(hf, eps);
    rep.heuristic_true_error = std::fabs(rep.heuristic.answer - rep.true_integral);

    SampledFunction af(fluky.fn);
    auto run = integrate_adaptive(af, eps, tau, budget);
    rep.adaptive_answer = run.answer;
    rep.adaptive_true_error = std::fabs(run.answer - rep.true_integral);
    rep.adaptive_cost = run.cost;
    rep.adaptive_warning = run.warning;
    return rep;
}

void write_fool_json(const FoolReport& r, std::ostream& os) {
    nlohmann::json out;
    out["k"] = r.k;
    out["eps"] = r.eps;
    out["tau"] = r.tau;
    out["cone_ratio"] = r.cone_ratio;
    out["true_integral"] = r.true_integral;
    out["heuristic"] = {{"answer", r.heuristic.answer},
                        {"claimed_error", r.heuristic.claimed_error},
                        {"true_error", r.heuristic_true_error},
                        {"stopped_at", r.heuristic.stopped_at},
                        {"cost", r.heuristic.cost},
                        {"warning", r.heuristic.warning}};
    out["guaranteed"] = {{"answer", r.adaptive_answer},
                         {"true_error", r.adaptive_true_error},
                         {"cost", r.adaptive_cost},
                         {"warning", r.adaptive_warning}};
    os << out.dump(2) << '\n';
}

}  // namespace coneadapt
