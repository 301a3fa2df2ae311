#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "klm/vector_ops.hpp"

namespace klm {

/// One first-order oracle answer: f(point) and one element of the
/// subdifferential at point. Oracles must be deterministic; evaluating the
/// same point twice yields bit-identical samples.
struct OracleSample {
    Vector point;
    double value = 0.0;
    Vector subgradient;
};

/// Thrown when a user oracle returns a non-finite value/subgradient, or when
/// a returned subgradient exceeds the declared Lipschitz bound. Carries the
/// offending point.
class OracleFault : public std::runtime_error {
public:
    OracleFault(std::string what, Vector point)
        : std::runtime_error(std::move(what)), point(std::move(point)) {}

    Vector point;
};

/// A black-box first-order evaluator. The callable returns (f(x), g) with
/// g in the subdifferential of f at x. Which subgradient is returned at
/// nondifferentiable points is the oracle's choice; the built-in oracles
/// all pick the minimum-index active piece.
///
/// Oracles are immutable after construction and safe to evaluate
/// concurrently from multiple threads.
class Oracle {
public:
    using Fn = std::function<std::pair<double, Vector>(const Vector&)>;

    Oracle() = default;
    Oracle(std::size_t dim, Fn fn, std::string name = "")
        : dim_(dim), fn_(std::move(fn)), name_(std::move(name)) {}

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    bool valid() const { return static_cast<bool>(fn_); }

    std::pair<double, Vector> operator()(const Vector& x) const { return fn_(x); }

private:
    std::size_t dim_ = 0;
    Fn fn_;
    std::string name_;
};

/// Evaluates the oracle and validates the answer. Non-finite output is
/// reported as an OracleFault carrying the offending point.
inline OracleSample evaluate(const Oracle& oracle, const Vector& point) {
    if (point.size() != oracle.dim())
        throw std::invalid_argument("oracle point has dimension " + std::to_string(point.size()) +
                                    ", expected " + std::to_string(oracle.dim()));
    auto [value, grad] = oracle(point);
    if (!std::isfinite(value) || !all_finite(grad) || grad.size() != point.size())
        throw OracleFault("oracle returned a non-finite or malformed sample", point);
    return OracleSample{point, value, std::move(grad)};
}

// Relative slack allowed on the subgradient-norm check against the declared
// Lipschitz constant.
inline constexpr double kLipschitzSlack = 1e-9;

/// evaluate() plus the Lipschitz-bound check |g| <= L * (1 + slack).
inline OracleSample evaluate_checked(const Oracle& oracle, const Vector& point, double lipschitz) {
    OracleSample s = evaluate(oracle, point);
    if (norm(s.subgradient) > lipschitz * (1.0 + kLipschitzSlack))
        throw OracleFault("oracle subgradient exceeds declared Lipschitz constant", point);
    return s;
}

}  // namespace klm
