#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/bundle.hpp"
#include "klm/dual.hpp"
#include "klm/gram.hpp"
#include "klm/problem.hpp"
#include "klm/trace.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

enum class StepKind { Hard, Easy };

/// Mutable per-run state. The bundle holds one cut per iterate, in iterate
/// order; s is the index of the last hard step (0 if none); tau and mu are
/// the output weight and the easy-step size inherited from it. Until the
/// first hard step, tau = 1 and mu = R / (L sqrt(N)).
struct KlmState {
    Bundle bundle;
    GramCache gram;
    int s = 0;
    double tau = 1.0;
    double mu = 0.0;
    std::vector<std::pair<int, double>> bound_history;  // (M, certified val) at hard steps
    SimplexPoint last_weights;
    bool has_weights = false;
};

/// Decides, at iteration M with the current state, whether to take a hard
/// step (solve the bundle subproblem) or an easy step (constant-size
/// subgradient step). Any decision rule keeps the method's guarantee; the
/// total number of iterations stays fixed at N.
struct StepPolicy {
    std::string name;
    std::function<StepKind(int, const KlmState&)> decide;

    static StepPolicy pure_easy() {
        return {"pure-easy", [](int, const KlmState&) { return StepKind::Easy; }};
    }
    static StepPolicy pure_hard() {
        return {"pure-hard", [](int, const KlmState&) { return StepKind::Hard; }};
    }
    /// Hard step at every iteration divisible by k; k = 1 is pure-hard.
    static StepPolicy every_k(int k) {
        if (k < 1) throw std::invalid_argument("every-k needs k >= 1");
        return {"every-" + std::to_string(k),
                [k](int M, const KlmState&) { return M % k == 0 ? StepKind::Hard : StepKind::Easy; }};
    }
    /// Hard steps until a certified value <= threshold is recorded, easy
    /// afterwards: once the desired accuracy is certified the remaining
    /// iterations cost only subgradient steps.
    static StepPolicy gap_driven(double threshold) {
        return {"gap-driven", [threshold](int, const KlmState& st) {
                    if (!st.bound_history.empty() && st.bound_history.back().second <= threshold)
                        return StepKind::Easy;
                    return StepKind::Hard;
                }};
    }
};

/// Result of one run: the output point, its value, the certified upper bound
/// on f(x_bar) - f* (the last hard step's value, or LR/sqrt(N) when no hard
/// step was taken), the trace, and the sampled iterates.
struct RunResult {
    Vector x_bar;
    double f_bar = 0.0;
    double upper_bound = 0.0;
    std::vector<RunRecord> trace;
    std::vector<OracleSample> samples;
    std::vector<std::pair<int, double>> bound_history;
    std::optional<double> last_certified_gap;  // subproblem certificate of the last hard step
    std::string policy_name;
    int s = 0;
    double tau = 1.0;
};

/// x_{M+1} = x_M - mu * g_M with the step size inherited from the last hard
/// step (or from the initialization).
inline Vector easy_step(const KlmState& st, int M) {
    const Cut& c = st.bundle[static_cast<std::size_t>(M - 1)];
    Vector x = c.point;
    axpy(-st.mu, c.gradient, x);
    return x;
}

/// Solves the subproblem over the first M cuts, moves to the recovered
/// y*, and updates (s, tau, mu) from the dual solution: tau is the simplex
/// mass on the step-budget coordinate (the multiplier of the f(x_m) - L zeta
/// constraint), mu = zeta*/L. Records the certified dual value, which under
/// weak duality is a valid upper bound even at finite solver tolerance.
inline std::pair<Vector, HardStepSolution> hard_step(KlmState& st, const ProblemSpec& spec, int M,
                                                     const SolveOptions& opts = {}) {
    st.gram.sync(st.bundle);
    const DualProblem dp = build_dual(st.bundle, spec, static_cast<std::size_t>(M));
    const SimplexPoint w =
        solve_dual(dp, opts, st.has_weights ? &st.last_weights : nullptr, &st.gram);
    HardStepSolution sol = recover_primal(dp, w);
    st.s = M;
    st.tau = sol.weights.beta;
    st.mu = sol.zeta_star / spec.L;
    st.bound_history.emplace_back(M, sol.dual_value);
    st.last_weights = sol.weights;
    st.has_weights = true;
    return {sol.y_star, std::move(sol)};
}

/// Output combination: (1 - tau) x_m + (tau / (N - s)) sum_{j=s+1}^{N} x_j,
/// with m the incumbent among the first s iterates. With s = 0 (tau = 1)
/// this is the plain average of all N iterates.
inline Vector aggregate_output(const Bundle& bundle, int s, double tau, int N) {
    const std::size_t m = s > 0 ? bundle.incumbent_index_among(static_cast<std::size_t>(s)) : 0;
    Vector out = scaled(bundle[m].point, 1.0 - tau);
    const double weight = tau / static_cast<double>(N - s);
    for (int j = s; j < N; ++j) axpy(weight, bundle[static_cast<std::size_t>(j)].point, out);
    return out;
}

/// Runs the method for the fixed budget of N iterates. Guarantee: whenever
/// |x* - x0| <= R and the oracle is sound, f(x_bar) - f* <= upper_bound <=
/// LR/sqrt(N) (plus eps when the oracle returns eps-subgradients),
/// regardless of the policy's choices.
inline RunResult klm_run(const ProblemSpec& spec, const StepPolicy& policy,
                         const SolveOptions& opts = {}) {
    spec.validate();
    using clock = std::chrono::steady_clock;

    KlmState st;
    st.mu = spec.R / (spec.L * std::sqrt(static_cast<double>(spec.N)));

    RunResult res;
    res.policy_name = policy.name;

    auto record = [&](int iteration, StepType type, const OracleSample& s_i,
                      std::optional<double> bound, std::int64_t us) {
        const double f_best =
            res.trace.empty() ? s_i.value : std::min(res.trace.back().f_best, s_i.value);
        res.trace.push_back(RunRecord{iteration, type, s_i.value, f_best, bound, {}, {}, us});
    };

    {
        const auto t0 = clock::now();
        OracleSample s1 = evaluate_checked(spec.oracle, spec.x0, spec.L);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
        st.bundle.append(Cut::from_sample(s1));
        record(1, StepType::Init, s1, {}, us.count());
        res.samples.push_back(std::move(s1));
    }

    for (int M = 1; M <= spec.N - 1; ++M) {
        const auto t0 = clock::now();
        const StepKind kind = policy.decide(M, st);
        Vector x_next;
        std::optional<double> bound;
        if (kind == StepKind::Hard) {
            auto [x, sol] = hard_step(st, spec, M, opts);
            x_next = std::move(x);
            bound = sol.dual_value;
            res.last_certified_gap = sol.certified_gap;
        } else {
            x_next = easy_step(st, M);
        }
        OracleSample s_next = evaluate_checked(spec.oracle, x_next, spec.L);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
        st.bundle.append(Cut::from_sample(s_next));
        record(M + 1, kind == StepKind::Hard ? StepType::Hard : StepType::Easy, s_next, bound,
               us.count());
        res.samples.push_back(std::move(s_next));
    }

    res.x_bar = aggregate_output(st.bundle, st.s, st.tau, spec.N);
    res.f_bar = evaluate_checked(spec.oracle, res.x_bar, spec.L).value;
    res.upper_bound = st.bound_history.empty() ? spec.L * spec.R / std::sqrt(spec.N)
                                               : st.bound_history.back().second;
    res.bound_history = st.bound_history;
    res.s = st.s;
    res.tau = st.tau;
    return res;
}

/// The all-easy run: the subgradient method with the constant step size
/// R / (L sqrt(N)).
inline RunResult subgradient_baseline(const ProblemSpec& spec, const SolveOptions& opts = {}) {
    return klm_run(spec, StepPolicy::pure_easy(), opts);
}

/// The classic cutting-plane baseline: each iterate minimizes the polyhedral
/// model over the ball. Reports the best value seen and, per iteration, the
/// certified model lower bound on f* (non-decreasing; inexact solves are
/// clamped by a running max, which preserves soundness).
inline RunResult kelley_baseline(const ProblemSpec& spec, int iters,
                                 const SolveOptions& opts = {}) {
    spec.validate();
    if (iters < 1) throw std::invalid_argument("kelley baseline needs iters >= 1");
    using clock = std::chrono::steady_clock;

    RunResult res;
    res.policy_name = "kelley";
    Bundle bundle;
    GramCache gram;
    std::vector<double> warm;

    double f_best = 0.0;
    Vector x_best;
    double lower = -std::numeric_limits<double>::infinity();

    {
        const auto t0 = clock::now();
        OracleSample s1 = evaluate_checked(spec.oracle, spec.x0, spec.L);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
        f_best = s1.value;
        x_best = s1.point;
        bundle.append(Cut::from_sample(s1));
        res.trace.push_back(RunRecord{1, StepType::Init, s1.value, f_best, {}, {}, {}, us.count()});
        res.samples.push_back(std::move(s1));
    }

    for (int i = 2; i <= iters; ++i) {
        const auto t0 = clock::now();
        gram.sync(bundle);
        KelleySolution ks = solve_kelley_subproblem(bundle, spec.x0, spec.R, opts.tol, spec.eps,
                                                    opts.max_iters, &gram,
                                                    warm.empty() ? nullptr : &warm);
        warm = ks.weights;
        warm.push_back(0.0);  // seed for the cut added below
        lower = std::max(lower, ks.model_min);
        OracleSample s_i = evaluate_checked(spec.oracle, ks.x_next, spec.L);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
        bundle.append(Cut::from_sample(s_i));
        if (s_i.value < f_best) {
            f_best = s_i.value;
            x_best = s_i.point;
        }
        res.trace.push_back(RunRecord{i, StepType::Kelley, s_i.value, f_best, {}, lower,
                                      f_best - lower, us.count()});
        res.samples.push_back(std::move(s_i));
    }

    res.x_bar = x_best;
    res.f_bar = f_best;
    res.upper_bound = f_best - lower;  // certified bound on f_bar - f*
    res.bound_history = {};
    return res;
}

}  // namespace klm
