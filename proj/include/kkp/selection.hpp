#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kkp/rng.hpp"

namespace kkp {

// Reorders v so v[0..k) holds the k smallest elements under `less`
// (no ordering guaranteed inside either part). Expected linear time:
// quickselect with a three-way partition and a deterministically seeded
// pivot, so equal keys and adversarial layouts stay cheap.
template <typename T, typename Less>
void select_k_smallest(std::vector<T>& v, std::size_t k, Less less) {
    if (k == 0 || v.size() <= k) return;
    SplitMix64 rng(0x9d3f5c1eull ^ (static_cast<std::uint64_t>(v.size()) << 20) ^ k);
    std::size_t lo = 0, hi = v.size();
    while (lo < hi) {
        if (hi - lo <= 1) return;
        const std::size_t pidx = lo + rng.below(hi - lo);
        T pivot = v[pidx];
        // Dutch-flag partition of [lo, hi) around pivot.
        std::size_t lt = lo, i = lo, gt = hi;
        while (i < gt) {
            if (less(v[i], pivot)) {
                std::swap(v[lt++], v[i++]);
            } else if (less(pivot, v[i])) {
                std::swap(v[i], v[--gt]);
            } else {
                ++i;
            }
        }
        if (k <= lt) {
            hi = lt;
        } else if (k >= gt) {
            lo = gt;
        } else {
            return; // k falls inside the equal run
        }
    }
}

} // namespace kkp
