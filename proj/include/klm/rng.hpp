#pragma once

#include <cstdint>
#include <random>

namespace klm {

// Seedable PRNG used by all instance generators. Wraps std::mt19937_64,
// whose output sequence is fully pinned by the standard, and converts to
// doubles by hand so that streams are reproducible across platforms and
// standard libraries (std::uniform_real_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform on [-1, 1), the distribution used by the instance generators.
    double symmetric() { return 2.0 * next_double() - 1.0; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

private:
    std::mt19937_64 gen_;
};

}  // namespace klm
