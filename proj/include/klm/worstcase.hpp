#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "klm/klm.hpp"
#include "klm/oracle.hpp"
#include "klm/problem.hpp"
#include "klm/simplex_min.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// Parameters of the worst-case construction: a convex L-Lipschitz function
/// on R^p whose minimizer lies within R of the origin, built so that no
/// method whose iterates stay in the span of the returned subgradients can
/// get closer than LR/sqrt(N) to the optimum within N oracle calls.
struct ResistingSpec {
    double L = 1.0;
    double R = 1.0;
    int N = 0;
    std::size_t p = 0;

    void validate() const {
        if (!(L > 0.0) || !(R > 0.0)) throw std::invalid_argument("L and R must be positive");
        if (N < 1) throw std::invalid_argument("N must be at least 1");
        if (static_cast<std::size_t>(N) > p)
            throw std::invalid_argument("the construction needs N <= p");
    }

    double optimal_value() const { return -L * R / std::sqrt(static_cast<double>(N)); }
    double bound() const { return L * R / std::sqrt(static_cast<double>(N)); }
};

/// The resisting oracle. Value L * max(max_{i<=N} x_i, |x| - R(1 + 1/sqrt(N))).
/// On the coordinate branch (which wins ties) the subgradient is L * e_{i*}
/// with i* the smallest maximizing coordinate; on the norm branch it is
/// L * x/|x|. Both branches return gradients of norm exactly L.
inline OracleSample resisting_eval(const ResistingSpec& spec, const Vector& x) {
    if (x.size() != spec.p) throw std::invalid_argument("resisting oracle dimension mismatch");
    std::size_t istar = 0;
    double fmax = x[0];
    for (std::size_t i = 1; i < static_cast<std::size_t>(spec.N); ++i)
        if (x[i] > fmax) {
            fmax = x[i];
            istar = i;
        }
    const double xnorm = norm(x);
    const double shell = xnorm - spec.R * (1.0 + 1.0 / std::sqrt(static_cast<double>(spec.N)));
    OracleSample s;
    s.point = x;
    if (fmax >= shell) {
        s.value = spec.L * fmax;
        s.subgradient = zeros(spec.p);
        s.subgradient[istar] = spec.L;
    } else {
        // shell > fmax >= -|x| forces |x| > 0 here.
        s.value = spec.L * shell;
        s.subgradient = scaled(x, spec.L / xnorm);
    }
    return s;
}

inline Oracle make_resisting_oracle(const ResistingSpec& spec) {
    spec.validate();
    return Oracle(spec.p,
                  [spec](const Vector& x) {
                      OracleSample s = resisting_eval(spec, x);
                      return std::make_pair(s.value, std::move(s.subgradient));
                  },
                  "resisting");
}

/// Euclidean distance from v to the span of the given generators, by a
/// ridge-regularized normal-equations solve.
inline double span_residual(const Vector& v, const std::vector<const Vector*>& gens) {
    const std::size_t n = gens.size();
    if (n == 0) return norm(v);
    std::vector<double> gram(n * n);
    std::vector<double> rhs(n);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = dot(*gens[i], *gens[j]);
            gram[i * n + j] = gram[j * n + i] = g;
        }
        max_diag = std::max(max_diag, gram[i * n + i]);
        rhs[i] = dot(*gens[i], v);
    }
    for (std::size_t i = 0; i < n; ++i) gram[i * n + i] += 1e-12 * std::max(max_diag, 1e-30);
    if (!detail::cholesky_solve(gram, n, &rhs, nullptr)) return norm(v);
    Vector r = v;
    for (std::size_t i = 0; i < n; ++i) axpy(-rhs[i], *gens[i], r);
    return norm(r);
}

/// Checks that every iterate lies in x_1 + span of the previously returned
/// subgradients (within the least-squares residual tolerance), which is the
/// structural assumption the lower-bound construction exploits.
inline double max_span_residual(const std::vector<OracleSample>& samples) {
    double worst = 0.0;
    std::vector<const Vector*> gens;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        gens.push_back(&samples[i - 1].subgradient);
        const Vector shifted = sub(samples[i].point, samples[0].point);
        worst = std::max(worst, span_residual(shifted, gens));
    }
    return worst;
}

/// A method that consumes a problem description and returns a full run.
using MethodRunner = std::function<RunResult(const ProblemSpec&)>;

struct LowerBoundReport {
    double gap_xN = 0.0;    // f(x_N) - f*
    double gap_xbar = 0.0;  // f(x_bar) - f* for methods with an output point
    double bound = 0.0;     // LR/sqrt(N)
    bool passed = false;    // gap_xN >= bound - 1e-12 and iterate zero pattern verified
    bool span_ok = false;   // the method respected the span assumption
    double max_span_residual = 0.0;
    bool zeros_ok = false;  // coordinates i..p of x_i vanish
    double max_zero_violation = 0.0;
    RunResult run;
};

/// Runs the given span-respecting method from x_1 = 0 against the resisting
/// oracle for N oracle calls and checks the lower bound f(x_N) - f* >=
/// LR/sqrt(N), together with the inductive zero pattern of the iterates
/// (coordinates i..p of x_i stay zero). A span violation makes the
/// experiment invalid rather than failed.
inline LowerBoundReport lower_bound_experiment(const ResistingSpec& spec,
                                               const MethodRunner& method) {
    spec.validate();
    ProblemSpec prob;
    prob.oracle = make_resisting_oracle(spec);
    prob.L = spec.L;
    prob.R = spec.R;
    prob.x0 = zeros(spec.p);  // the construction normalizes the start to the origin
    prob.N = spec.N;

    LowerBoundReport rep;
    rep.run = method(prob);
    rep.bound = spec.bound();
    const double fstar = spec.optimal_value();
    rep.gap_xN = rep.run.samples.back().value - fstar;
    rep.gap_xbar = rep.run.f_bar - fstar;

    rep.max_span_residual = klm::max_span_residual(rep.run.samples);
    rep.span_ok = rep.max_span_residual <= 1e-8;

    rep.max_zero_violation = 0.0;
    for (std::size_t i = 0; i < rep.run.samples.size(); ++i) {
        const Vector& x = rep.run.samples[i].point;
        for (std::size_t j = i; j < spec.p; ++j)
            rep.max_zero_violation = std::max(rep.max_zero_violation, std::abs(x[j]));
    }
    rep.zeros_ok = rep.max_zero_violation <= 1e-12;
    rep.passed = rep.zeros_ok && rep.gap_xN >= rep.bound - 1e-12;
    return rep;
}

}  // namespace klm
