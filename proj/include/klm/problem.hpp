#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "klm/oracle.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// Everything a solver run needs to know about one minimization instance:
/// the oracle, the Lipschitz constant L of the objective, a radius R with
/// |x* - x0| <= R, the starting point x0, and the iterate budget N (fixed in
/// advance). eps > 0 declares that the oracle returns epsilon-subgradients;
/// f_lower is an optional known lower bound on the optimal value.
struct ProblemSpec {
    Oracle oracle;
    double L = 0.0;
    double R = 0.0;
    Vector x0;
    int N = 0;
    double eps = 0.0;
    std::optional<double> f_lower;

    void validate() const {
        if (!oracle.valid()) throw std::invalid_argument("problem has no oracle");
        if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("L must be positive");
        if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be positive");
        if (N < 1) throw std::invalid_argument("N must be at least 1");
        if (eps < 0.0 || !std::isfinite(eps)) throw std::invalid_argument("eps must be >= 0");
        if (x0.size() != oracle.dim())
            throw std::invalid_argument("x0 dimension does not match oracle");
        if (!all_finite(x0)) throw std::invalid_argument("x0 must be finite");
        if (f_lower && !std::isfinite(*f_lower))
            throw std::invalid_argument("f_lower must be finite");
    }
};

}  // namespace klm
