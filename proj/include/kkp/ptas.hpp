#pragma once

#include "kkp/report.hpp"
#include "kkp/rounding.hpp"

namespace kkp {

struct PtasOptions {
    // Residual cardinality for the completion call: k - |L| by default;
    // the cruder k - ell bound behind this switch for A/B runs.
    bool literal_residual = false;
};

// Enumeration depth ell = max(0, min(⌈1/eps⌉ - 2, k)); eps must be in (0, 1/2].
std::int64_t ptas_depth(const Rat& epsilon, std::int64_t k);

// Every subset of the reduced set with size <= ell, each exactly once, in
// lexicographic order of the sorted id sequences.
std::vector<std::vector<ItemId>> enumerate_prefixes(const ReducedSet& reduced,
                                                    std::int64_t ell);

// Feasible solution worth at least (1 - 4*eps) * OPT: enumerate small
// high-profit prefixes over one reduced set, complete each over the other
// with the half heuristic, return the best.
SolveReport ptas_solve(const Instance& inst, const Rat& epsilon,
                       const PtasOptions& options = {});

} // namespace kkp
