#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace klm {

enum class StepType { Init, Easy, Hard, Kelley };

inline const char* to_string(StepType t) {
    switch (t) {
        case StepType::Init: return "init";
        case StepType::Easy: return "easy";
        case StepType::Hard: return "hard";
        case StepType::Kelley: return "kelley";
    }
    return "?";
}

/// One row of a run trace, keyed by the 1-based iterate index it produced.
/// bound_upper is the certified subproblem value recorded at hard steps;
/// cert_lower is the certified model lower bound on f* recorded by the
/// Kelley baseline; certified_gap = f_best - cert_lower when both exist.
struct RunRecord {
    int iteration = 0;
    StepType step_type = StepType::Init;
    double f_x = 0.0;
    double f_best = 0.0;
    std::optional<double> bound_upper;
    std::optional<double> cert_lower;
    std::optional<double> certified_gap;
    std::int64_t elapsed_us = 0;
};

}  // namespace klm
