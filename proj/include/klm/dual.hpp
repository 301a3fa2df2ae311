#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klm/bundle.hpp"
#include "klm/gram.hpp"
#include "klm/problem.hpp"
#include "klm/simplex_min.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// Point on the unit simplex over the M cut weights, the step-budget weight
/// beta, and (when a lower bound on f* is supplied) the weight of the
/// virtual zero-gradient cut.
struct SimplexPoint {
    std::vector<double> b;
    double beta = 0.0;
    double b_virtual = 0.0;

    double sum() const {
        double s = beta + b_virtual;
        for (double x : b) s += x;
        return s;
    }
};

/// The hard-step subproblem in dual form: minimize over the simplex
///   sum_i b_i c_i + b_virtual * f_lower_coeff
///     + R * sqrt(|sum_i b_i g_i|^2 + L^2 beta^2 / horizon),
/// where c_i = <g_i, x_i - x0> + delta_m - delta_i + eps and horizon = N - M
/// counts the remaining iterations. Holds a view of the bundle (first M
/// cuts); the bundle must outlive the problem.
struct DualProblem {
    const Bundle* bundle = nullptr;
    std::size_t M = 0;
    std::vector<double> coeffs;
    double L = 0.0;
    double R = 0.0;
    Vector x0;
    int horizon = 0;
    double eps = 0.0;
    std::optional<double> f_lower;
    std::optional<double> f_lower_coeff;  // delta_m - f_lower
    double incumbent_value = 0.0;         // delta_m; 0 by convention when M == 0
    std::size_t m = 0;                    // incumbent index among the M cuts

    const Cut& cut(std::size_t i) const { return (*bundle)[i]; }
};

struct HorizonError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Recovered primal solution of the hard-step subproblem together with its
/// certificate. value = f(x_m) - t_star is a feasible value of the
/// subproblem; dual_value upper-bounds its optimum for any simplex point, so
/// certified_gap = dual_value - value certifies how close both are.
struct HardStepSolution {
    SimplexPoint weights;
    Vector y_star;
    double zeta_star = 0.0;
    double t_star = 0.0;
    double value = 0.0;
    double dual_value = 0.0;
    double certified_gap = 0.0;
    double d_star = 0.0;
    bool degenerate = false;  // d_star below cutoff; y_star/zeta_star take the 0/0 = 0 convention
};

struct Certificate {
    double dual_value = 0.0;
    double primal_value = 0.0;
    double gap = 0.0;
};

struct SolveOptions {
    double tol = 1e-8;   // certified-gap target, in value units
    int max_iters = 0;   // 0 = 200 * (M + 1)
};

class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(std::string what, SimplexPoint best, double gap)
        : std::runtime_error(std::move(what)), best(std::move(best)), gap(gap) {}

    SimplexPoint best;
    double gap = 0.0;
};

/// Assembles the dual of the hard-step subproblem over the first M bundle
/// cuts. M = 0 is allowed and yields the pure step-budget problem whose
/// optimum is the initialization of the method.
inline DualProblem build_dual(const Bundle& bundle, const ProblemSpec& spec, std::size_t M) {
    if (M >= static_cast<std::size_t>(spec.N))
        throw HorizonError("hard step at M = " + std::to_string(M) +
                           " leaves no remaining iterations (N = " + std::to_string(spec.N) + ")");
    if (M > bundle.size()) throw std::invalid_argument("bundle has fewer than M cuts");

    DualProblem p;
    p.bundle = &bundle;
    p.M = M;
    p.L = spec.L;
    p.R = spec.R;
    p.x0 = spec.x0;
    p.horizon = spec.N - static_cast<int>(M);
    p.eps = spec.eps;
    if (M > 0) {
        p.m = bundle.incumbent_index_among(M);
        p.incumbent_value = bundle[p.m].value;
        p.coeffs.resize(M);
        for (std::size_t i = 0; i < M; ++i) {
            const Cut& c = bundle[i];
            p.coeffs[i] =
                dot(c.gradient, sub(c.point, spec.x0)) + p.incumbent_value - c.value + spec.eps;
        }
        if (spec.f_lower) {
            p.f_lower = spec.f_lower;
            p.f_lower_coeff = p.incumbent_value - *spec.f_lower;
        }
    }
    return p;
}

/// The dual objective at a simplex point; convex in w.
inline double dual_objective(const DualProblem& p, const SimplexPoint& w) {
    double lin = 0.0;
    Vector u = zeros(p.x0.size());
    for (std::size_t i = 0; i < p.M; ++i) {
        lin += w.b[i] * p.coeffs[i];
        if (w.b[i] != 0.0) axpy(w.b[i], p.cut(i).gradient, u);
    }
    if (p.f_lower_coeff) lin += w.b_virtual * *p.f_lower_coeff;
    const double rad = squared_norm(u) + p.L * p.L * w.beta * w.beta / p.horizon;
    return lin + p.R * std::sqrt(rad);
}

// d_star below this cutoff triggers the degenerate recovery branch.
inline constexpr double kDegenerateDStar = 1e-12;

namespace detail {

/// Minimum-norm point y = x0 + sum_i mu_i g_i with <g_i, y - x0> = rhs_i
/// over the given cuts, via a ridge-regularized Gram solve. Returns x0 when
/// the system is unusable. Used to recover the kink point where the active
/// cuts intersect once the aggregated gradient has cancelled to zero.
inline Vector min_norm_intersection(const std::vector<const Cut*>& active, const Vector& x0,
                                    std::vector<double> rhs) {
    const std::size_t a = active.size();
    if (a == 0) return x0;
    std::vector<double> gram(a * a);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = dot(active[i]->gradient, active[j]->gradient);
            gram[i * a + j] = gram[j * a + i] = g;
        }
        max_diag = std::max(max_diag, gram[i * a + i]);
    }
    for (std::size_t i = 0; i < a; ++i) gram[i * a + i] += 1e-13 * std::max(max_diag, 1e-30);
    if (!cholesky_solve(gram, a, &rhs, nullptr)) return x0;
    Vector y = x0;
    for (std::size_t i = 0; i < a; ++i) axpy(rhs[i], active[i]->gradient, y);
    return y;
}

}  // namespace detail

/// Recovers the primal solution of the hard-step subproblem from dual
/// weights and certifies it. For d_star >= cutoff the closed-form recovery
/// applies and the recovered point lies exactly on the ball boundary
/// |y - x0|^2 + horizon * zeta^2 = R^2. Near a cancelled radical (the
/// 0/0 = 0 regime) that formula degrades: the ball multiplier vanishes at
/// the optimum and the optimal y is interior, pinned instead by the active
/// cuts being tight at t = delta_m - dual value. Both candidates are
/// evaluated and the one certifying better is kept, with (x0, 0) as the
/// last resort; every candidate is feasible by construction, so the
/// certificate is sound either way.
inline HardStepSolution recover_primal(const DualProblem& p, const SimplexPoint& w) {
    HardStepSolution sol;
    sol.weights = w;
    sol.dual_value = dual_objective(p, w);

    Vector u = zeros(p.x0.size());
    for (std::size_t i = 0; i < p.M; ++i)
        if (w.b[i] != 0.0) axpy(w.b[i], p.cut(i).gradient, u);
    const double rho =
        std::sqrt(squared_norm(u) + p.L * p.L * w.beta * w.beta / p.horizon);
    sol.d_star = rho / (2.0 * p.R);

    // Feasible value achieved by a candidate (y, zeta): delta_m - t with t
    // the max over all subproblem constraints.
    auto t_of = [&](const Vector& y, double zeta) {
        double t = p.incumbent_value - p.L * zeta;
        for (std::size_t i = 0; i < p.M; ++i) {
            const Cut& c = p.cut(i);
            t = std::max(t, c.value + dot(sub(y, c.point), c.gradient) - p.eps);
        }
        if (p.f_lower) t = std::max(t, *p.f_lower);
        return t;
    };

    bool have = false;
    double best_t = 0.0;
    bool best_closed_form = false;
    auto consider = [&](Vector y, double zeta, bool closed_form) {
        const double ball = squared_norm(sub(y, p.x0)) + p.horizon * zeta * zeta;
        if (ball > p.R * p.R * (1.0 + 1e-9)) return;
        const double t = t_of(y, zeta);
        if (!have || t < best_t) {
            have = true;
            best_t = t;
            best_closed_form = closed_form;
            sol.y_star = std::move(y);
            sol.zeta_star = zeta;
        }
    };

    if (sol.d_star >= kDegenerateDStar) {
        Vector y = p.x0;
        axpy(-1.0 / (2.0 * sol.d_star), u, y);
        consider(std::move(y), p.L * w.beta / (2.0 * p.horizon * sol.d_star), true);
    }
    if (!have || sol.dual_value - (p.incumbent_value - best_t) > 1e-13 * (1.0 + std::abs(sol.dual_value))) {
        std::vector<const Cut*> active;
        std::vector<double> rhs;
        for (std::size_t i = 0; i < p.M; ++i)
            if (w.b[i] > 1e-10) {
                active.push_back(&p.cut(i));
                // tightness at t = delta_m - dual_value reads <g_i, y - x0> = c_i - dual_value
                rhs.push_back(p.coeffs[i] - sol.dual_value);
            }
        if (!active.empty()) {
            Vector y = detail::min_norm_intersection(active, p.x0, std::move(rhs));
            consider(std::move(y), std::max(0.0, sol.dual_value / p.L), false);
        }
        consider(p.x0, 0.0, false);
    }
    sol.degenerate = !best_closed_form;

    sol.t_star = best_t;
    sol.value = p.incumbent_value - best_t;
    sol.certified_gap = sol.dual_value - sol.value;
    return sol;
}

inline Certificate certify(const DualProblem& p, const SimplexPoint& w) {
    const HardStepSolution sol = recover_primal(p, w);
    return Certificate{sol.dual_value, sol.value, sol.certified_gap};
}

namespace detail {

inline SimplexPoint to_simplex_point(const std::vector<double>& w, std::size_t M) {
    SimplexPoint sp;
    sp.b.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(M));
    sp.beta = w[M];
    return sp;
}

}  // namespace detail

/// Solves the dual to a certified gap <= tol. Deterministic given its
/// inputs. The engine is pairwise Frank-Wolfe with exact line search and an
/// active-face polish; certification is by the recovered primal value, so
/// the returned weights always carry a sound bound (weak duality) even
/// before convergence.
///
/// When a lower bound f_lower is present, its virtual cut enters the dual as
/// a vertex with zero gradient; by positive homogeneity of the radical the
/// full-simplex optimum is min(f_lower_coeff, optimum without the vertex),
/// so the solver optimizes over the real cuts and blends toward the virtual
/// vertex afterwards. Blending rescales (b, beta) uniformly, which leaves
/// the recovered (y*, zeta*) unchanged.
inline SimplexPoint solve_dual(const DualProblem& p, const SolveOptions& opts = {},
                               const SimplexPoint* warm = nullptr,
                               const GramCache* gram = nullptr) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    GramCache local;
    if (!gram) {
        if (p.bundle) local.sync(*p.bundle);
        gram = &local;
    }

    NormSimplexProblem np;
    np.gram = gram;
    np.n_cuts = p.M;
    np.has_tail = true;
    np.tail_diag = p.L * p.L / p.horizon;
    np.c.assign(p.coeffs.begin(), p.coeffs.end());
    np.c.push_back(0.0);
    np.scale = p.R;

    std::vector<double> w0;
    if (warm) {
        w0.assign(p.M + 1, 0.0);
        for (std::size_t i = 0; i < std::min(warm->b.size(), p.M); ++i) w0[i] = warm->b[i];
        w0[p.M] = warm->beta;  // b_virtual is dropped; the engine renormalizes
    }

    int remaining = opts.max_iters > 0 ? opts.max_iters : 200 * (static_cast<int>(p.M) + 1);
    double engine_tol = 0.5 * opts.tol;
    SimplexPoint best;
    double best_gap = std::numeric_limits<double>::infinity();
    const std::vector<double>* start = warm ? &w0 : nullptr;

    for (int round = 0; round < 8; ++round) {
        NormSimplexResult res = minimize_norm_simplex(np, engine_tol, std::max(remaining, 1), start);
        SimplexPoint sp = detail::to_simplex_point(res.w, p.M);
        HardStepSolution sol = recover_primal(p, sp);
        if (std::getenv("KLM_DEBUG_SOLVE")) {
            std::fprintf(stderr, "round %d: iters=%d engine_gap=%.3e dual=%.9f gap=%.3e d*=%.3e\n",
                         round, res.iters, res.gap, sol.dual_value, sol.certified_gap, sol.d_star);
        }
        if (sol.certified_gap < best_gap) {
            best = sp;
            best_gap = sol.certified_gap;
        }
        if (sol.certified_gap <= opts.tol) return sp;
        if (p.f_lower_coeff) {
            const double cv = *p.f_lower_coeff;
            if (cv < sol.dual_value) {
                // Blend toward the virtual vertex: the objective interpolates
                // linearly, and scaling (b, beta) uniformly leaves the
                // recovered point intact as long as d_star stays healthy.
                double keep = std::min(1.0, (0.5 * opts.tol) / (sol.dual_value - cv));
                if (sol.d_star > 0.0)
                    keep = std::min(1.0, std::max(keep, 4.0 * kDegenerateDStar / sol.d_star));
                SimplexPoint blended = sp;
                for (double& x : blended.b) x *= keep;
                blended.beta *= keep;
                blended.b_virtual = std::max(0.0, 1.0 - keep * sp.sum());
                Certificate c2 = certify(p, blended);
                if (c2.gap < best_gap) {
                    best = blended;
                    best_gap = c2.gap;
                }
                if (c2.gap <= opts.tol) return blended;
            }
        }
        remaining -= std::max(res.iters, 1);
        if (remaining <= 0) break;
        engine_tol *= 0.25;
        w0 = res.w;
        start = &w0;
    }
    throw NonconvergenceError("dual solver did not reach the requested certified gap (best " +
                                  std::to_string(best_gap) + ")",
                              best, best_gap);
}

/// Solution of the Kelley model subproblem min over the ball of the
/// polyhedral model: the certified model minimum (a lower bound on f*
/// whenever |x* - x0| <= R) and the next trial point.
struct KelleySolution {
    Vector x_next;
    double model_min = 0.0;
    std::vector<double> weights;
};

/// The model of the collected cuts, max_i (delta_i + <g_i, x - x_i> - eps).
inline double model_value(const Bundle& bundle, const Vector& x, double eps = 0.0) {
    double v = -std::numeric_limits<double>::infinity();
    for (const Cut& c : bundle.cuts())
        v = std::max(v, c.value + dot(sub(x, c.point), c.gradient) - eps);
    return v;
}

/// Minimizes the polyhedral model of the collected cuts over the ball of
/// radius R around x0, through the same simplex machinery as the hard step
/// (the model minimum is max over the simplex of the aggregated cut value
/// minus R times the aggregated gradient norm). The reported model_min is a
/// sound lower bound even at finite tolerance, since any simplex point gives
/// a valid minorant value; convergence is certified by evaluating the model
/// at the recovered point. When the aggregated gradient cancels, the model
/// minimizer is interior and sits where the active cuts intersect, so that
/// kink point is recovered from the weights (x0 is the last-resort
/// fallback).
inline KelleySolution solve_kelley_subproblem(const Bundle& bundle, const Vector& x0, double R,
                                              double tol, double eps = 0.0, int max_iters = 0,
                                              const GramCache* gram = nullptr,
                                              const std::vector<double>* warm = nullptr) {
    if (bundle.empty()) throw std::invalid_argument("Kelley subproblem needs a nonempty bundle");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    GramCache local;
    if (!gram) {
        local.sync(bundle);
        gram = &local;
    }
    const std::size_t M = bundle.size();

    NormSimplexProblem np;
    np.gram = gram;
    np.n_cuts = M;
    np.has_tail = false;
    np.c.resize(M);
    double max_gnorm2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const Cut& c = bundle[i];
        np.c[i] = -(c.value + dot(c.gradient, sub(x0, c.point)) - eps);
        max_gnorm2 = std::max(max_gnorm2, gram->at(i, i));
    }
    np.scale = R;

    int remaining = max_iters > 0 ? max_iters : 200 * (static_cast<int>(M) + 1);
    double engine_tol = 0.5 * tol;
    const std::vector<double>* start = warm;
    std::vector<double> w0;
    KelleySolution best;
    double best_gap = std::numeric_limits<double>::infinity();

    for (int round = 0; round < 8; ++round) {
        NormSimplexResult res = minimize_norm_simplex(np, engine_tol, std::max(remaining, 1), start);
        KelleySolution sol;
        sol.weights = res.w;
        sol.model_min = -res.value;

        Vector u = zeros(x0.size());
        for (std::size_t i = 0; i < M; ++i)
            if (res.w[i] != 0.0) axpy(res.w[i], bundle[i].gradient, u);
        const double un = norm(u);
        // Candidate 1: the ball-boundary point behind the aggregated
        // gradient. Candidate 2: the active-cut kink at level model_min.
        // Pick whichever the model prefers.
        Vector cand = x0;
        double cand_val = model_value(bundle, x0, eps);
        if (un > 1e-14 * std::sqrt(std::max(max_gnorm2, 1e-300))) {
            Vector boundary = x0;
            axpy(-R / un, u, boundary);
            const double v = model_value(bundle, boundary, eps);
            if (v < cand_val) {
                cand = std::move(boundary);
                cand_val = v;
            }
        }
        {
            std::vector<const Cut*> active;
            std::vector<double> rhs;
            for (std::size_t i = 0; i < M; ++i)
                if (res.w[i] > 1e-10) {
                    active.push_back(&bundle[i]);
                    rhs.push_back(sol.model_min + np.c[i]);  // <g_i, y - x0> at tightness
                }
            if (!active.empty()) {
                Vector kink = detail::min_norm_intersection(active, x0, std::move(rhs));
                if (squared_norm(sub(kink, x0)) <= R * R * (1.0 + 1e-9)) {
                    const double v = model_value(bundle, kink, eps);
                    if (v < cand_val) {
                        cand = std::move(kink);
                        cand_val = v;
                    }
                }
            }
        }
        sol.x_next = std::move(cand);
        const double gap = cand_val - sol.model_min;
        if (gap < best_gap) {
            best = sol;
            best_gap = gap;
        }
        if (gap <= tol) return best;

        remaining -= std::max(res.iters, 1);
        if (remaining <= 0) break;
        engine_tol *= 0.25;
        w0 = res.w;
        start = &w0;
    }
    SimplexPoint sp;
    sp.b = best.weights;
    throw NonconvergenceError("Kelley subproblem solver did not converge (gap " +
                                  std::to_string(best_gap) + ")",
                              sp, best_gap);
}

}  // namespace klm
