#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "buddynet/common.hpp"

namespace buddynet {

// Static stabbing index over inclusive intervals [lo, hi]. Intervals are
// sorted by lo and overlaid with an implicit balanced BST; each node keeps
// the max hi of its subtree so whole branches can be pruned. Point queries
// run in O(log n + hits). Empty intervals (lo > hi) are accepted and never
// match.
class IntervalIndex {
public:
    struct Interval {
        Timestamp lo;
        Timestamp hi;
        std::uint32_t id;
    };

    IntervalIndex() = default;

    explicit IntervalIndex(std::vector<Interval> intervals) {
        std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && (a.hi < b.hi || (a.hi == b.hi && a.id < b.id)));
        });
        const std::size_t n = intervals.size();
        lo_.resize(n);
        hi_.resize(n);
        id_.resize(n);
        max_hi_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo_[i] = intervals[i].lo;
            hi_[i] = intervals[i].hi;
            id_[i] = intervals[i].id;
        }
        if (n > 0) build_max(0, n);
    }

    std::size_t size() const { return lo_.size(); }

    // Appends the ids of all intervals containing t, sorted ascending.
    void stab(Timestamp t, std::vector<std::uint32_t>& out) const {
        const std::size_t first = out.size();
        if (!lo_.empty()) stab_range(0, lo_.size(), t, out);
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    }

    std::vector<std::uint32_t> stab(Timestamp t) const {
        std::vector<std::uint32_t> out;
        stab(t, out);
        return out;
    }

private:
    Timestamp build_max(std::size_t b, std::size_t e) {
        const std::size_t m = b + (e - b) / 2;
        Timestamp mx = hi_[m];
        if (b < m) mx = std::max(mx, build_max(b, m));
        if (m + 1 < e) mx = std::max(mx, build_max(m + 1, e));
        max_hi_[m] = mx;
        return mx;
    }

    void stab_range(std::size_t b, std::size_t e, Timestamp t,
                    std::vector<std::uint32_t>& out) const {
        while (b < e) {
            const std::size_t m = b + (e - b) / 2;
            if (max_hi_[m] < t) return;  // no interval in [b, e) reaches t
            if (lo_[m] <= t) {
                if (hi_[m] >= t) out.push_back(id_[m]);
                if (b < m) stab_range(b, m, t, out);
                b = m + 1;  // continue into the right half
            } else {
                e = m;  // right half starts even later; discard it
            }
        }
    }

    std::vector<Timestamp> lo_;
    std::vector<Timestamp> hi_;
    std::vector<std::uint32_t> id_;
    std::vector<Timestamp> max_hi_;
};

}  // namespace buddynet
