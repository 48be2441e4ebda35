// Command-line surface for the guaranteed adaptive integration and
// function-recovery engines: single runs, the Monte Carlo harness, cost
// bound tables and the heuristic-fooling demo.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coneadapt/experiment.hpp"
#include "coneadapt/funlab.hpp"
#include "coneadapt/spline_family.hpp"
#include "coneadapt/trapezoid_family.hpp"
#include "json.hpp"

namespace {

using namespace coneadapt;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarning = 2;

// "bump:a=0.1,z=0.5" or "fluky:k=8".
TestFunction parse_fn(const std::string& desc, Problem problem) {
    const auto colon = desc.find(':');
    const std::string kind = desc.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(desc.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad --fn parameter: " + item);
            kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
    }
    if (kind == "bump") {
        const double a = kv.count("a") ? kv["a"] : 0.1;
        const double z = kv.count("z") ? kv["z"] : 0.5;
        return make_bump(problem == Problem::integration ? BumpSpec::integration(a, z)
                                                         : BumpSpec::approximation(a, z));
    }
    if (kind == "fluky") {
        const int k = kv.count("k") ? int(kv["k"]) : 8;
        return oscillatory_fluky(k);
    }
    throw std::invalid_argument("unknown --fn kind: " + kind);
}

nlohmann::json trace_json(const std::vector<RunStep>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const RunStep& s : trace) {
        nlohmann::json step;
        step["n"] = s.n;
        step["ftilde"] = s.ftilde;
        if (s.fnorm_lower) step["fnorm_lower"] = *s.fnorm_lower;
        step["tau"] = s.tau;
        arr.push_back(std::move(step));
    }
    return arr;
}

int cmd_single(Problem problem, const std::string& fn_desc, double eps, double tau,
               index_t budget, bool with_trace, const std::string& out_path) {
    const TestFunction f = parse_fn(fn_desc, problem);
    SampledFunction sf(f.fn);

    nlohmann::json out;
    out["function"] = f.name;
    out["eps"] = eps;
    out["tau"] = tau;
    out["budget"] = budget;

    bool warned;
    if (problem == Problem::integration) {
        auto run = integrate_adaptive(sf, eps, tau, budget);
        out["answer"] = run.answer;
        out["cost"] = run.cost;
        out["final_tau"] = run.final_tau;
        out["warning"] = run.warning;
        out["cone_violation_detected"] = run.cone_violation_detected;
        if (f.exact_integral) {
            out["true_value"] = *f.exact_integral;
            out["true_error"] = std::fabs(run.answer - *f.exact_integral);
        }
        if (with_trace) out["trace"] = trace_json(run.trace);
        warned = run.warning;
    } else {
        auto run = approximate_adaptive(sf, eps, tau, budget);
        out["spline_nodes"] = run.answer.size();
        out["cost"] = run.cost;
        out["final_tau"] = run.final_tau;
        out["warning"] = run.warning;
        out["cone_violation_detected"] = run.cone_violation_detected;
        out["sup_grid_error"] = sup_error_on_grid(f.fn, run.answer, index_t(1) << 17, f.kinks);
        if (with_trace) out["trace"] = trace_json(run.trace);
        if (!out_path.empty()) {
            std::ofstream os(out_path);
            if (!os) throw Error("cannot open " + out_path);
            os << "x,value\n";
            const auto vals = run.answer.node_values();
            for (index_t i = 0; i < run.answer.size(); ++i) {
                os << double(i) / double(run.answer.size() - 1) << ',' << vals[std::size_t(i)]
                   << '\n';
            }
        }
        warned = run.warning;
    }
    out["cone_ratio"] = f.cone_ratio(problem);
    std::cout << out.dump(2) << '\n';
    return warned ? kExitWarning : kExitOk;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& out_path,
                   const std::string& format, const std::string& corpus_path) {
    if (!corpus_path.empty()) {
        std::vector<BumpSpec> corpus;
        corpus.reserve(std::size_t(cfg.n_functions));
        for (index_t i = 0; i < cfg.n_functions; ++i) {
            corpus.push_back(sample_bump(mix_seed(cfg.seed, std::uint64_t(i)), cfg.problem));
        }
        std::ofstream os(corpus_path);
        if (!os) throw Error("cannot open " + corpus_path);
        export_corpus_jsonl(os, corpus);
    }

    const ExperimentReport report = run_experiment(cfg);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw Error("cannot open " + out_path);
        os = &file;
    }
    if (format == "json") {
        write_report_json(report, *os);
    } else {
        write_report_csv(report, *os);
    }

    long long violations = 0;
    for (const auto& row : report.rows) violations += row.guarantee_violations;
    if (violations > 0) {
        std::cerr << "guarantee audit FAILED: " << violations
                  << " finally-in-cone no-warning runs missed the tolerance\n";
        return kExitError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guaranteed adaptive integration and L-inf approximation on cones"};
    app.require_subcommand(1);

    std::string fn_desc = "bump:a=0.1,z=0.5";
    double eps = 1e-8;
    double tau = 100.0;
    index_t budget = 10'000'000;
    bool with_trace = false;
    std::string out_path;

    auto add_single_flags = [&](CLI::App* cmd) {
        cmd->add_option("--tau", tau, "cone constant (>= 2)");
        cmd->add_option("--eps", eps, "absolute error tolerance");
        cmd->add_option("--budget", budget, "evaluation budget N_max");
        cmd->add_option("--fn", fn_desc, "bump:a=A,z=Z or fluky:k=K");
        cmd->add_flag("--trace", with_trace, "include the per-iteration trace");
    };

    CLI::App* integrate = app.add_subcommand("integrate", "adaptive univariate integration");
    add_single_flags(integrate);

    CLI::App* approximate = app.add_subcommand("approximate", "adaptive L-inf recovery");
    add_single_flags(approximate);
    approximate->add_option("--out", out_path, "write the spline nodes as CSV");

    CLI::App* experiment = app.add_subcommand("experiment", "Monte Carlo success-rate tables");
    ExperimentConfig cfg;
    std::string problem_name = "integrate";
    std::string format = "csv";
    std::string exp_out, corpus_path;
    experiment->add_option("--problem", problem_name, "integrate | approximate");
    experiment->add_option("--n", cfg.n_functions, "number of random test functions");
    experiment->add_option("--eps", cfg.eps, "absolute error tolerance");
    experiment->add_option("--tau", cfg.tau_list, "cone constants")->delimiter(',');
    experiment->add_option("--budget", cfg.budget, "evaluation budget N_max");
    experiment->add_option("--seed", cfg.seed, "RNG seed");
    experiment->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    experiment->add_option("--out", exp_out, "output path (default stdout)");
    experiment->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--export-corpus", corpus_path, "write the sampled corpus as JSONL");

    CLI::App* bounds = app.add_subcommand("bounds", "cost-bound table");
    std::string bounds_problem = "integrate";
    double seminorm = 1.0;
    double sigma = 1.0;
    std::string norm_name = "F";
    bounds->add_option("--problem", bounds_problem, "integrate | approximate");
    bounds->add_option("--tau", tau, "cone constant");
    bounds->add_option("--eps", eps, "absolute error tolerance");
    bounds->add_option("--seminorm", seminorm, "semi-norm value of the input");
    bounds->add_option("--norm", norm_name, "F | Ftilde")->check(CLI::IsMember({"F", "Ftilde"}));
    bounds->add_option("--sigma", sigma, "ball radius for the non-adaptive row");

    CLI::App* fool = app.add_subcommand("fool", "heuristic vs guaranteed on a fluky integrand");
    int k = 8;
    fool->add_option("--k", k, "oscillation count");
    fool->add_option("--eps", eps, "absolute error tolerance");
    fool->add_option("--tau", tau, "cone constant for the guaranteed run");
    fool->add_option("--budget", budget, "evaluation budget N_max");

    CLI11_PARSE(app, argc, argv);

    try {
        if (integrate->parsed()) {
            return cmd_single(coneadapt::Problem::integration, fn_desc, eps, tau, budget,
                              with_trace, "");
        }
        if (approximate->parsed()) {
            return cmd_single(coneadapt::Problem::approximation, fn_desc, eps, tau, budget,
                              with_trace, out_path);
        }
        if (experiment->parsed()) {
            cfg.problem = problem_name == "approximate" ? coneadapt::Problem::approximation
                                                        : coneadapt::Problem::integration;
            return cmd_experiment(cfg, exp_out, format, corpus_path);
        }
        if (bounds->parsed()) {
            auto rows = coneadapt::bounds_report(
                bounds_problem == "approximate" ? coneadapt::Problem::approximation
                                                : coneadapt::Problem::integration,
                tau, eps, seminorm,
                norm_name == "Ftilde" ? coneadapt::WhichNorm::Ftilde : coneadapt::WhichNorm::F,
                sigma);
            coneadapt::write_bounds_csv(rows, std::cout);
            return kExitOk;
        }
        if (fool->parsed()) {
            const auto report = coneadapt::fool_demo(k, eps, tau, budget);
            coneadapt::write_fool_json(report, std::cout);
            return report.heuristic.warning || report.adaptive_warning ? kExitWarning : kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
