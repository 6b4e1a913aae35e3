#pragma once

#include <cstdint>

#include "kkp/instance.hpp"

namespace kkp {

enum class OracleMethod { SubsetEnum, Dp };

struct OracleResult {
    std::int64_t opt_value = 0;
    Solution witness;
    OracleMethod method = OracleMethod::SubsetEnum;
};

// Exhaustive subset enumeration; refuses n > 25. Deterministic tie-break:
// max profit, then min weight, then lexicographically smallest id set.
OracleResult solve_exact_enum(const Instance& inst);

// Max-profit table over (items used, capacity used) with witness
// reconstruction. The two oracles share no helper logic on purpose.
OracleResult solve_exact_dp(const Instance& inst,
                            std::int64_t cell_budget = 100'000'000);

} // namespace kkp
