#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "klm/oracle.hpp"
#include "klm/rng.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// f(x) = |x - center| in one dimension, L = 1. At the kink the oracle
/// returns the symmetric choice g = 0.
inline Oracle make_abs1d(double center = 0.0) {
    return Oracle(1,
                  [center](const Vector& x) {
                      const double d = x[0] - center;
                      const double g = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
                      return std::make_pair(std::abs(d), Vector{g});
                  },
                  "abs1d");
}

/// min_x |A x - b|_inf with A (m x p, row-major) and b sampled uniformly
/// from [-1, 1). The subgradient at x is sign(r_j*) * row_j* for the
/// smallest index j* attaining the max residual magnitude, sign(0) = +1,
/// so the Lipschitz constant is the largest row norm.
struct LinfRegression {
    std::size_t m = 0, p = 0;
    std::vector<double> A;  // row-major, m*p
    std::vector<double> b;
    std::uint64_t seed = 0;

    double row_norm(std::size_t j) const {
        double s = 0.0;
        for (std::size_t k = 0; k < p; ++k) s += A[j * p + k] * A[j * p + k];
        return std::sqrt(s);
    }

    double lipschitz() const {
        double L = 0.0;
        for (std::size_t j = 0; j < m; ++j) L = std::max(L, row_norm(j));
        return L;
    }
};

inline LinfRegression gen_linf(std::size_t m, std::size_t p, std::uint64_t seed) {
    if (m < 1 || p < 1) throw std::invalid_argument("gen_linf needs m, p >= 1");
    LinfRegression inst;
    inst.m = m;
    inst.p = p;
    inst.seed = seed;
    inst.A.resize(m * p);
    inst.b.resize(m);
    Rng rng(seed);
    for (double& a : inst.A) a = rng.symmetric();
    for (double& v : inst.b) v = rng.symmetric();
    return inst;
}

inline OracleSample linf_eval(const LinfRegression& inst, const Vector& x) {
    if (x.size() != inst.p) throw std::invalid_argument("linf oracle dimension mismatch");
    std::size_t jstar = 0;
    double best = -1.0;
    double rstar = 0.0;
    for (std::size_t j = 0; j < inst.m; ++j) {
        double r = -inst.b[j];
        for (std::size_t k = 0; k < inst.p; ++k) r += inst.A[j * inst.p + k] * x[k];
        const double a = std::abs(r);
        if (a > best) {
            best = a;
            jstar = j;
            rstar = r;
        }
    }
    const double sgn = rstar >= 0.0 ? 1.0 : -1.0;
    OracleSample s;
    s.point = x;
    s.value = best;
    s.subgradient.resize(inst.p);
    for (std::size_t k = 0; k < inst.p; ++k) s.subgradient[k] = sgn * inst.A[jstar * inst.p + k];
    return s;
}

inline Oracle make_linf_oracle(LinfRegression inst) {
    const std::size_t p = inst.p;
    return Oracle(p,
                  [inst = std::move(inst)](const Vector& x) {
                      OracleSample s = linf_eval(inst, x);
                      return std::make_pair(s.value, std::move(s.subgradient));
                  },
                  "linf");
}

/// f(x) = max_k (<slope_k, x> + offset_k). When planted, x_star is a global
/// minimizer certified by a convex combination of active slopes summing to
/// zero, so Theorem-style guarantees can be asserted against f_star exactly.
struct MaxAffine {
    std::size_t k = 0, p = 0;
    std::vector<double> slopes;  // row-major, k*p
    std::vector<double> offsets;
    std::optional<Vector> x_star;
    std::optional<double> f_star;
    std::optional<std::vector<double>> witness;  // convex weights on the active pieces
    std::uint64_t seed = 0;

    double lipschitz() const {
        double L = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += slopes[i * p + j] * slopes[i * p + j];
            L = std::max(L, std::sqrt(s));
        }
        return L;
    }
};

inline OracleSample maxaffine_eval(const MaxAffine& inst, const Vector& x) {
    if (x.size() != inst.p) throw std::invalid_argument("maxaffine oracle dimension mismatch");
    std::size_t istar = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < inst.k; ++i) {
        double v = inst.offsets[i];
        for (std::size_t j = 0; j < inst.p; ++j) v += inst.slopes[i * inst.p + j] * x[j];
        if (v > best) {
            best = v;
            istar = i;
        }
    }
    OracleSample s;
    s.point = x;
    s.value = best;
    s.subgradient.assign(inst.slopes.begin() + static_cast<std::ptrdiff_t>(istar * inst.p),
                         inst.slopes.begin() + static_cast<std::ptrdiff_t>((istar + 1) * inst.p));
    return s;
}

inline Oracle make_maxaffine_oracle(MaxAffine inst) {
    const std::size_t p = inst.p;
    return Oracle(p,
                  [inst = std::move(inst)](const Vector& x) {
                      OracleSample s = maxaffine_eval(inst, x);
                      return std::make_pair(s.value, std::move(s.subgradient));
                  },
                  "maxaffine");
}

/// Builds a max-affine instance with a planted optimum. The first
/// a = min(k, p+1) slopes are drawn so that a strictly positive combination
/// cancels exactly (the last one closes the sum), which certifies
/// 0 in the subdifferential at x_star; the remaining pieces are kept
/// strictly inactive there. Degenerate draws are retried with the next
/// seed (reported through the returned seed field).
inline MaxAffine gen_planted_maxaffine(std::size_t k, std::size_t p, std::uint64_t seed) {
    if (k < 2 || p < 1) throw std::invalid_argument("gen_planted_maxaffine needs k >= 2, p >= 1");
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        const std::uint64_t s = seed + attempt;
        Rng rng(s);
        MaxAffine inst;
        inst.k = k;
        inst.p = p;
        inst.seed = s;
        inst.slopes.assign(k * p, 0.0);
        inst.offsets.assign(k, 0.0);

        const std::size_t a = std::min(k, p + 1);
        std::vector<double> lambda(a);
        for (double& l : lambda) l = rng.uniform(0.2, 1.0);
        for (std::size_t i = 0; i + 1 < a; ++i)
            for (std::size_t j = 0; j < p; ++j) inst.slopes[i * p + j] = rng.symmetric();
        // Close the positive combination: lambda_a s_a = -sum_{i<a} lambda_i s_i.
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < a; ++i) acc += lambda[i] * inst.slopes[i * p + j];
            inst.slopes[(a - 1) * p + j] = -acc / lambda[a - 1];
        }
        for (std::size_t i = a; i < k; ++i)
            for (std::size_t j = 0; j < p; ++j) inst.slopes[i * p + j] = rng.symmetric();

        bool degenerate = false;
        for (std::size_t i = 0; i < a && !degenerate; ++i) {
            double s2 = 0.0;
            for (std::size_t j = 0; j < p; ++j) s2 += inst.slopes[i * p + j] * inst.slopes[i * p + j];
            if (s2 < 1e-8) degenerate = true;  // a vanishing active slope spoils the witness
        }
        if (degenerate) continue;

        Vector x_star(p);
        for (double& v : x_star) v = rng.symmetric();
        const double f_star = rng.symmetric();
        for (std::size_t i = 0; i < k; ++i) {
            double sx = 0.0;
            for (std::size_t j = 0; j < p; ++j) sx += inst.slopes[i * p + j] * x_star[j];
            const double slack = i < a ? 0.0 : rng.uniform(0.1, 1.0);
            inst.offsets[i] = f_star - sx - slack;
        }

        double lsum = 0.0;
        for (std::size_t i = 0; i < a; ++i) lsum += lambda[i];
        std::vector<double> witness(a);
        for (std::size_t i = 0; i < a; ++i) witness[i] = lambda[i] / lsum;

        inst.x_star = std::move(x_star);
        inst.f_star = f_star;
        inst.witness = std::move(witness);
        return inst;
    }
    throw std::runtime_error("gen_planted_maxaffine: no valid plant after 64 attempts");
}

// --- instance serialization -------------------------------------------------
//
// Documented schema (see README): matrices are row-major flat arrays; the
// seed and shape fields make instances reproducible without the arrays.

inline void to_json(nlohmann::json& j, const LinfRegression& inst) {
    j = nlohmann::json{{"type", "linf"}, {"m", inst.m},       {"p", inst.p},
                       {"seed", inst.seed}, {"A", inst.A},    {"b", inst.b}};
}

inline void from_json(const nlohmann::json& j, LinfRegression& inst) {
    if (j.at("type").get<std::string>() != "linf")
        throw std::invalid_argument("instance type is not linf");
    j.at("m").get_to(inst.m);
    j.at("p").get_to(inst.p);
    j.at("seed").get_to(inst.seed);
    j.at("A").get_to(inst.A);
    j.at("b").get_to(inst.b);
    if (inst.A.size() != inst.m * inst.p || inst.b.size() != inst.m)
        throw std::invalid_argument("linf instance has inconsistent shapes");
}

inline void to_json(nlohmann::json& j, const MaxAffine& inst) {
    j = nlohmann::json{{"type", "maxaffine"}, {"k", inst.k},         {"p", inst.p},
                       {"seed", inst.seed},   {"slopes", inst.slopes}, {"offsets", inst.offsets}};
    if (inst.x_star) j["x_star"] = *inst.x_star;
    if (inst.f_star) j["f_star"] = *inst.f_star;
    if (inst.witness) j["witness"] = *inst.witness;
}

inline void from_json(const nlohmann::json& j, MaxAffine& inst) {
    if (j.at("type").get<std::string>() != "maxaffine")
        throw std::invalid_argument("instance type is not maxaffine");
    j.at("k").get_to(inst.k);
    j.at("p").get_to(inst.p);
    j.at("seed").get_to(inst.seed);
    j.at("slopes").get_to(inst.slopes);
    j.at("offsets").get_to(inst.offsets);
    if (inst.slopes.size() != inst.k * inst.p || inst.offsets.size() != inst.k)
        throw std::invalid_argument("maxaffine instance has inconsistent shapes");
    if (j.contains("x_star")) inst.x_star = j.at("x_star").get<Vector>();
    if (j.contains("f_star")) inst.f_star = j.at("f_star").get<double>();
    if (j.contains("witness")) inst.witness = j.at("witness").get<std::vector<double>>();
}

}  // namespace klm
