#pragma once

#include <gtest/gtest.h>

#include <vector>

#include "klm/oracle.hpp"
#include "klm/rng.hpp"
#include "klm/vector_ops.hpp"

namespace klm::testutil {

inline Vector random_point(Rng& rng, std::size_t p, double scale = 2.0) {
    Vector x(p);
    for (double& v : x) v = scale * rng.symmetric();
    return x;
}

struct OraclePropertyReport {
    double worst_subgrad_violation = 0.0;  // f(u) - f(v) - <g(u), u - v> - eps
    double worst_norm_excess = 0.0;        // |g| - L
};

// Checks the subgradient inequality and the Lipschitz bound on random pairs.
inline OraclePropertyReport check_oracle_properties(const Oracle& oracle, double L, int pairs,
                                                    Rng& rng, double eps = 0.0,
                                                    double scale = 2.0) {
    OraclePropertyReport rep;
    for (int i = 0; i < pairs; ++i) {
        const Vector u = random_point(rng, oracle.dim(), scale);
        const Vector v = random_point(rng, oracle.dim(), scale);
        const OracleSample su = evaluate(oracle, u);
        const OracleSample sv = evaluate(oracle, v);
        const double lhs = su.value - sv.value - dot(su.subgradient, sub(u, v)) - eps;
        rep.worst_subgrad_violation = std::max(rep.worst_subgrad_violation, lhs);
        rep.worst_norm_excess =
            std::max(rep.worst_norm_excess, norm(su.subgradient) - L);
    }
    return rep;
}

}  // namespace klm::testutil
