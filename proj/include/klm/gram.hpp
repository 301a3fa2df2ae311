#pragma once

#include <cstddef>
#include <vector>

#include "klm/bundle.hpp"
#include "klm/vector_ops.hpp"

namespace klm {

/// Lower-triangular cache of pairwise inner products <g_i, g_j> of bundle
/// cut gradients. Grows incrementally as cuts are appended, so a run that
/// solves one subproblem per iteration pays O(M p) per new cut instead of
/// O(M^2 p) per solve.
class GramCache {
public:
    // Extends the cache to cover all cuts currently in the bundle.
    void sync(const Bundle& bundle) {
        while (rows_.size() < bundle.size()) {
            const std::size_t i = rows_.size();
            std::vector<double> row(i + 1);
            for (std::size_t j = 0; j <= i; ++j) row[j] = dot(bundle[i].gradient, bundle[j].gradient);
            rows_.push_back(std::move(row));
        }
    }

    std::size_t size() const { return rows_.size(); }

    double at(std::size_t i, std::size_t j) const {
        return i >= j ? rows_[i][j] : rows_[j][i];
    }

    static GramCache of(const Bundle& bundle) {
        GramCache g;
        g.sync(bundle);
        return g;
    }

private:
    std::vector<std::vector<double>> rows_;
};

}  // namespace klm
