// Command-line harness: single runs, the lower-bound experiment, the
// final-error grid, and instance generation. Machine-readable output (CSV,
// JSON) goes to files and stdout; the human summary goes to stderr. Set
// KLM_LOG=info|debug for progress logging.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "klm/all.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitNonconvergence = 3;
constexpr int kExitOracleFault = 4;

struct CommonOpts {
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int max_iters = 0;
    int jobs = 1;
};

struct ProblemOpts {
    std::string problem = "abs1d";
    std::size_t m = 200;
    std::size_t p = 100;
    int N = 16;
    double x0_scalar = 1.0;
    std::optional<double> L_override;
    std::optional<double> R_override;
    double eps = 0.0;
    std::optional<double> f_lower;
};

struct BuiltProblem {
    klm::ProblemSpec spec;
    std::string label;
    std::optional<double> f_star;  // known optimum, when the family provides one
    nlohmann::json meta;
};

// Assembles the oracle and geometry for one named problem family. For the
// L-infinity family, L and R default to twice their measured values (R is
// measured against the in-repo certified reference minimizer).
BuiltProblem build_problem(const ProblemOpts& po, const CommonOpts& co) {
    BuiltProblem bp;
    klm::SolveOptions solver{co.tol, co.max_iters};
    if (po.problem == "abs1d") {
        bp.spec.oracle = klm::make_abs1d(0.0);
        bp.spec.L = po.L_override.value_or(1.0);
        bp.spec.x0 = {po.x0_scalar};
        bp.spec.R = po.R_override.value_or(std::abs(po.x0_scalar) + 1.0);
        bp.f_star = 0.0;
        bp.label = "abs1d";
        bp.meta = {{"problem", "abs1d"}, {"x0", po.x0_scalar}};
    } else if (po.problem == "maxaffine") {
        klm::MaxAffine inst = klm::gen_planted_maxaffine(po.m, po.p, co.seed);
        bp.f_star = inst.f_star;
        const klm::Vector xs = *inst.x_star;
        bp.spec.x0 = klm::zeros(po.p);
        bp.spec.L = po.L_override.value_or(inst.lipschitz());
        bp.spec.R = po.R_override.value_or(1.25 * klm::norm(xs) + 0.5);
        bp.spec.oracle = klm::make_maxaffine_oracle(std::move(inst));
        bp.label = "maxaffine";
        bp.meta = {{"problem", "maxaffine"}, {"k", po.m}, {"p", po.p}, {"seed", co.seed}};
    } else if (po.problem == "linf") {
        klm::LinfRegression inst = klm::gen_linf(po.m, po.p, co.seed);
        const double L_exact = inst.lipschitz();
        bp.spec.oracle = klm::make_linf_oracle(inst);
        bp.spec.x0 = klm::zeros(po.p);
        if (po.L_override && po.R_override) {
            bp.spec.L = *po.L_override;
            bp.spec.R = *po.R_override;
        } else {
            klm::FigureConfig probe;
            probe.m = po.m;
            probe.p = po.p;
            probe.seed = co.seed;
            // Radius bootstrap only; reuse the figure machinery's constants.
            double R_work = 1.0;
            klm::ReferenceInterval ref;
            for (int round = 0; round < 24; ++round) {
                ref = klm::reference_optimum(bp.spec.oracle, bp.spec.x0, L_exact, R_work,
                                             0.02 * L_exact * R_work, 2000, solver);
                if (klm::distance(ref.x_best, bp.spec.x0) <= 0.45 * R_work) break;
                R_work *= 2.0;
            }
            bp.spec.L = po.L_override.value_or(2.0 * L_exact);
            bp.spec.R =
                po.R_override.value_or(2.0 * std::max(klm::distance(ref.x_best, bp.spec.x0), 1e-9));
        }
        bp.label = "linf";
        bp.meta = {{"problem", "linf"}, {"m", po.m}, {"p", po.p}, {"seed", co.seed}};
    } else if (po.problem == "resisting") {
        klm::ResistingSpec rs;
        rs.L = po.L_override.value_or(1.0);
        rs.R = po.R_override.value_or(1.0);
        rs.N = po.N;
        rs.p = po.p;
        rs.validate();
        bp.spec.oracle = klm::make_resisting_oracle(rs);
        bp.spec.L = rs.L;
        bp.spec.R = rs.R;
        bp.spec.x0 = klm::zeros(po.p);
        bp.f_star = rs.optimal_value();
        bp.label = "resisting";
        bp.meta = {{"problem", "resisting"}, {"p", po.p}, {"N", po.N}};
    } else {
        throw CLI::ValidationError("--problem must be one of abs1d, maxaffine, linf, resisting");
    }
    bp.spec.N = po.N;
    bp.spec.eps = po.eps;
    bp.spec.f_lower = po.f_lower;
    bp.spec.validate();
    bp.meta["N"] = po.N;
    bp.meta["L"] = bp.spec.L;
    bp.meta["R"] = bp.spec.R;
    bp.meta["eps"] = po.eps;
    if (po.f_lower) bp.meta["f_lower"] = *po.f_lower;
    bp.meta["seed"] = co.seed;
    bp.meta["tol"] = co.tol;
    bp.meta["max_iters"] = co.max_iters;
    return bp;
}

int cmd_run(const CommonOpts& co, const ProblemOpts& po, const std::string& policy_name) {
    const BuiltProblem bp = build_problem(po, co);
    const klm::StepPolicy policy = klm::parse_policy(policy_name);
    klm::RunResult run = klm::klm_run(bp.spec, policy, klm::SolveOptions{co.tol, co.max_iters});

    std::filesystem::create_directories(co.out_dir);
    const std::string csv = (std::filesystem::path(co.out_dir) /
                             ("run_" + bp.label + "_" + klm::sanitize_token(policy_name) + "_N" +
                              std::to_string(po.N) + ".csv"))
                                .string();
    klm::write_trace_csv(csv, run.trace, /*include_elapsed=*/true);

    nlohmann::json out;
    out["config"] = bp.meta;
    out["config"]["policy"] = policy_name;
    out["config"]["out"] = co.out_dir;
    out["f_bar"] = run.f_bar;
    out["upper_bound"] = run.upper_bound;
    out["f_best"] = run.trace.back().f_best;
    out["s"] = run.s;
    out["tau"] = run.tau;
    out["csv"] = csv;
    if (!run.bound_history.empty()) {
        out["bounds"] = nlohmann::json::array();
        for (auto [M, v] : run.bound_history) out["bounds"].push_back({{"M", M}, {"val", v}});
    }
    if (run.last_certified_gap) out["certified_gap"] = *run.last_certified_gap;
    if (bp.f_star) {
        out["f_star"] = *bp.f_star;
        out["true_gap"] = run.f_bar - *bp.f_star;
    }

    const std::string summary =
        (std::filesystem::path(co.out_dir) / ("run_" + bp.label + "_summary.json")).string();
    std::ofstream(summary, std::ios::binary) << out.dump(2) << "\n";

    std::cout << out.dump() << "\n";
    std::cerr << "f_bar=" << klm::format_double(run.f_bar)
              << " bound=" << klm::format_double(run.upper_bound);
    if (run.last_certified_gap)
        std::cerr << " certified_gap=" << klm::format_double(*run.last_certified_gap);
    if (bp.f_star) std::cerr << " true_gap=" << klm::format_double(run.f_bar - *bp.f_star);
    std::cerr << " trace=" << csv << "\n";
    return kExitOk;
}

int cmd_lowerbound(const CommonOpts& co, int N, std::size_t p, const std::string& method) {
    klm::ResistingSpec rs;
    rs.N = N;
    rs.p = p;
    rs.validate();

    klm::SolveOptions solver{co.tol, co.max_iters};
    klm::MethodRunner runner;
    if (method == "kelley") {
        runner = [solver](const klm::ProblemSpec& spec) {
            return klm::kelley_baseline(spec, spec.N, solver);
        };
    } else {
        const klm::StepPolicy policy = klm::parse_policy(method);
        runner = [policy, solver](const klm::ProblemSpec& spec) {
            return klm::klm_run(spec, policy, solver);
        };
    }

    const klm::LowerBoundReport rep = klm::lower_bound_experiment(rs, runner);

    nlohmann::json out{{"N", N},
                       {"p", p},
                       {"method", method},
                       {"gap_xN", rep.gap_xN},
                       {"gap_xbar", rep.gap_xbar},
                       {"bound", rep.bound},
                       {"passed", rep.passed},
                       {"span_ok", rep.span_ok},
                       {"max_span_residual", rep.max_span_residual},
                       {"zeros_ok", rep.zeros_ok}};
    std::cout << out.dump() << "\n";
    std::cerr << "gap=" << klm::format_double(rep.gap_xN)
              << " bound=" << klm::format_double(rep.bound) << " "
              << (rep.passed ? "PASS" : "FAIL");
    if (!rep.span_ok) std::cerr << " (INVALID: span assumption violated)";
    std::cerr << "\n";
    return rep.passed && rep.span_ok ? kExitOk : kExitFailedCheck;
}

int cmd_figure(const CommonOpts& co, std::size_t m, std::size_t p, const std::vector<int>& Ns) {
    klm::FigureConfig cfg;
    cfg.m = m;
    cfg.p = p;
    cfg.seed = co.seed;
    if (!Ns.empty()) cfg.Ns = Ns;
    cfg.out_dir = co.out_dir;
    cfg.jobs = co.jobs;
    cfg.solver = klm::SolveOptions{co.tol, co.max_iters};

    const klm::FigureResult fig = klm::figure_l_inf(cfg);

    nlohmann::json out{{"csv", fig.csv_path},
                       {"summary", fig.summary_path},
                       {"L", fig.L},
                       {"R", fig.R},
                       {"ref_lo", fig.ref.lo},
                       {"ref_hi", fig.ref.hi},
                       {"ref_closed", fig.ref.closed},
                       {"hard_not_worse_at_largest_N", fig.hard_not_worse_at_largest_N}};
    std::cout << out.dump() << "\n";
    std::cerr << "figure data: " << fig.csv_path << " (reference width "
              << klm::format_double(fig.ref.hi - fig.ref.lo) << ", pure-hard "
              << (fig.hard_not_worse_at_largest_N ? "<=" : ">") << " pure-easy at largest N)\n";
    return kExitOk;
}

int cmd_gen(const CommonOpts& co, const std::string& problem, std::size_t m, std::size_t p) {
    nlohmann::json j;
    std::string name;
    if (problem == "linf") {
        j = klm::gen_linf(m, p, co.seed);
        name = "linf_m" + std::to_string(m) + "_p" + std::to_string(p) + "_s" +
               std::to_string(co.seed) + ".json";
    } else if (problem == "maxaffine") {
        j = klm::gen_planted_maxaffine(m, p, co.seed);
        name = "maxaffine_k" + std::to_string(m) + "_p" + std::to_string(p) + "_s" +
               std::to_string(co.seed) + ".json";
    } else {
        throw CLI::ValidationError("gen supports --problem linf or maxaffine");
    }
    std::filesystem::create_directories(co.out_dir);
    const std::string path = (std::filesystem::path(co.out_dir) / name).string();
    std::ofstream(path, std::ios::binary) << j.dump(2) << "\n";
    std::cout << nlohmann::json{{"instance", path}}.dump() << "\n";
    std::cerr << "wrote " << path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KLM: optimal bundle-style nonsmooth convex minimization with certified bounds"};
    app.require_subcommand(1);

    CommonOpts co;
    ProblemOpts po;
    std::string policy = "pure-hard";
    std::string method = "pure-easy";
    std::vector<int> Ns;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", co.out_dir, "output directory");
        sub->add_option("--seed", co.seed, "seed for all randomness");
        sub->add_option("--tol", co.tol, "certified-gap tolerance of the subproblem solver")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-iters", co.max_iters,
                        "subproblem iteration cap (0 = 200*(M+1))");
        sub->add_option("--jobs", co.jobs, "parallel grid cells")->check(CLI::PositiveNumber);
    };

    CLI::App* run = app.add_subcommand("run", "one KLM or baseline run; emits trace CSV + JSON");
    add_common(run);
    run->add_option("--problem", po.problem, "abs1d | maxaffine | linf | resisting");
    run->add_option("--m", po.m, "rows (linf) / pieces (maxaffine)");
    run->add_option("--n,--p", po.p, "dimension");
    run->add_option("--N", po.N, "iterate budget, fixed in advance")->check(CLI::PositiveNumber);
    run->add_option("--policy", policy, "pure-easy | pure-hard | every-k=K | gap=T");
    run->add_option("--x0", po.x0_scalar, "starting point (abs1d)");
    run->add_option("--L", po.L_override, "Lipschitz constant override");
    run->add_option("--R", po.R_override, "radius override");
    run->add_option("--eps", po.eps, "epsilon-subgradient slack")->check(CLI::NonNegativeNumber);
    run->add_option("--f-lower", po.f_lower, "known lower bound on f*");

    CLI::App* lb = app.add_subcommand("lowerbound", "worst-case construction: verify the rate floor");
    add_common(lb);
    int lb_N = 16;
    std::size_t lb_p = 16;
    lb->add_option("--N", lb_N, "oracle calls")->check(CLI::PositiveNumber);
    lb->add_option("--p", lb_p, "dimension (needs N <= p)");
    lb->add_option("--method", method, "pure-easy | pure-hard | every-k=K | gap=T | kelley");

    CLI::App* fig = app.add_subcommand("figure", "final-error grid on the random L-inf instance");
    add_common(fig);
    std::size_t fig_m = 200, fig_p = 100;
    fig->add_option("--m", fig_m, "rows");
    fig->add_option("--n,--p", fig_p, "dimension");
    fig->add_option("--Ns", Ns, "iterate budgets (default 4,8,...,512)")->delimiter(',');

    CLI::App* gen = app.add_subcommand("gen", "generate and serialize an instance (JSON)");
    add_common(gen);
    std::string gen_problem = "linf";
    std::size_t gen_m = 200, gen_p = 100;
    gen->add_option("--problem", gen_problem, "linf | maxaffine");
    gen->add_option("--m", gen_m, "rows (linf) / pieces (maxaffine)");
    gen->add_option("--n,--p", gen_p, "dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadFlags;
    }

    try {
        if (run->parsed()) return cmd_run(co, po, policy);
        if (lb->parsed()) return cmd_lowerbound(co, lb_N, lb_p, method);
        if (fig->parsed()) return cmd_figure(co, fig_m, fig_p, Ns);
        if (gen->parsed()) return cmd_gen(co, gen_problem, gen_m, gen_p);
    } catch (const klm::OracleFault& e) {
        std::cerr << "oracle fault: " << e.what() << "\n";
        return kExitOracleFault;
    } catch (const klm::NonconvergenceError& e) {
        std::cerr << "solver nonconvergence: " << e.what() << "\n";
        return kExitNonconvergence;
    } catch (const klm::RunAborted& e) {
        std::cerr << e.what() << "\n";
        return kExitNonconvergence;
    } catch (const CLI::Error& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFlags;
    }
    return kExitOk;
}
