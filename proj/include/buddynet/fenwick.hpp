#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace buddynet {

// Fenwick tree over non-negative integer weights. Backs the live-project
// sweep in the rewiring pass: insert/remove a project's weight when its
// lifespan opens/closes, and invert a cumulative draw in O(log n).
class FenwickTree {
public:
    explicit FenwickTree(std::size_t n) : tree_(n + 1, 0) {}

    std::size_t size() const { return tree_.size() - 1; }

    void add(std::size_t i, std::int64_t delta) {
        for (std::size_t j = i + 1; j < tree_.size(); j += j & (0 - j)) {
            tree_[j] += delta;
        }
    }

    // Sum of weights at positions [0, i).
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (std::size_t j = i; j > 0; j -= j & (0 - j)) {
            s += tree_[j];
        }
        return s;
    }

    std::int64_t total() const { return prefix(size()); }

    // Smallest index i with prefix(i + 1) > u; requires 0 <= u < total().
    // Zero-weight positions are never returned.
    std::size_t find(std::int64_t u) const {
        assert(u >= 0 && u < total());
        std::size_t pos = 0;
        std::size_t mask = 1;
        while ((mask << 1) <= size()) mask <<= 1;
        for (; mask > 0; mask >>= 1) {
            const std::size_t next = pos + mask;
            if (next < tree_.size() && tree_[next] <= u) {
                pos = next;
                u -= tree_[next];
            }
        }
        return pos;  // pos items have cumulative weight <= u, so item pos is hit
    }

    void reset() { std::fill(tree_.begin(), tree_.end(), 0); }

private:
    std::vector<std::int64_t> tree_;
};

}  // namespace buddynet
