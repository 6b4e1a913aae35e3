#pragma once

#include <span>
#include <vector>

#include "kkp/instance.hpp"
#include "kkp/rational.hpp"

namespace kkp {

struct LpSolution {
    Rat objective;
    std::vector<Rat> values; // aligned with the instance's item order
    std::vector<ItemId> fractional_ids;
};

// Exact basic optimum of  max Σ p_j x_j  s.t.  Σ w_j x_j <= c, Σ x_j <= k,
// 0 <= x_j <= 1.  At most two fractional variables; every returned solution
// is certified against the exact dual before it leaves this function.
LpSolution solve_lp(const Instance& inst);

struct HalfResult {
    Solution solution;
    std::int64_t value = 0; // P^H
    std::int64_t p_max = 0;
};

// 1/2-approximation obtained by rounding the exact LP optimum; the returned
// value P satisfies P <= OPT <= P + p_max <= 2P.
HalfResult half_approx(const Instance& inst);

// Completion variant for arbitrary item pools. Tolerates empty and
// degenerate inputs (returns the empty solution) and pools where everything
// fits (returns the whole pool).
HalfResult half_fill(std::span<const Item> pool, std::int64_t capacity,
                     std::int64_t cardinality);

} // namespace kkp
