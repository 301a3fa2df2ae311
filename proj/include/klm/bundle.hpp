#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "klm/oracle.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// One affine minorant of the objective: f(x) >= value + <gradient, x - point>
/// (up to the epsilon slack when the oracle returns epsilon-subgradients).
struct Cut {
    Vector point;
    double value = 0.0;
    Vector gradient;

    static Cut from_sample(const OracleSample& s) { return Cut{s.point, s.value, s.subgradient}; }
};

/// The ordered trial-point set. Cuts are appended in iterate order and never
/// aggregated or dropped. Tracks the incumbent: the first cut attaining the
/// minimal objective value (ties keep the earlier index).
class Bundle {
public:
    void append(Cut cut) {
        if (!cuts_.empty() && cut.point.size() != cuts_.front().point.size())
            throw std::invalid_argument("cut dimension does not match bundle");
        if (cuts_.empty() || cut.value < cuts_[incumbent_].value) incumbent_ = cuts_.size();
        cuts_.push_back(std::move(cut));
    }

    std::size_t size() const { return cuts_.size(); }
    bool empty() const { return cuts_.empty(); }
    const Cut& operator[](std::size_t i) const { return cuts_[i]; }
    const std::vector<Cut>& cuts() const { return cuts_; }

    // 0-based index of the incumbent cut; only meaningful when non-empty.
    std::size_t incumbent_index() const { return incumbent_; }
    const Cut& incumbent() const { return cuts_[incumbent_]; }

    // Incumbent among the first count cuts (ties keep the earlier index).
    std::size_t incumbent_index_among(std::size_t count) const {
        std::size_t m = 0;
        for (std::size_t i = 1; i < count; ++i)
            if (cuts_[i].value < cuts_[m].value) m = i;
        return m;
    }

private:
    std::vector<Cut> cuts_;
    std::size_t incumbent_ = 0;
};

}  // namespace klm
