#pragma once

#include "kkp/report.hpp"
#include "kkp/rounding.hpp"

namespace kkp {

struct Partition {
    std::vector<Item> large; // p_j > eps * P^H, strictly
    std::vector<Item> small;
    std::int64_t lambda = 0; // min(k, ⌊2/eps⌋): large items any feasible set can hold
};

Partition partition_items(const Instance& inst, const Rat& epsilon, std::int64_t p_h);

struct RoundedLargeItem {
    Item item;
    std::int64_t profit_index = 0; // rounded profit = (eps*P^H/lambda) * profit_index
};

struct SerialRounded {
    std::vector<RoundedLargeItem> items; // survivors, deterministic order
    std::int64_t geometric_dropped = 0;  // removed by the per-class caps
    std::int64_t distinct_indices = 0;
};

// Geometric rounding (with per-class caps and lightest selection) followed by
// arithmetic re-rounding of the surviving values onto the eps*P^H/lambda grid.
SerialRounded serial_round_large(std::span<const Item> large, const Rat& epsilon,
                                 std::int64_t p_h, std::int64_t lambda);

struct PairTable {
    std::int64_t index_cap = 0; // profit-index axis bound
    std::int64_t lambda = 0;
    // Dense (a, l) -> minimal weight; kWeightUnreachable where no subset exists.
    std::vector<std::int64_t> weight;
    std::vector<std::vector<ItemId>> items; // realizing item ids per state
    std::int64_t value_set_size = 0;        // distinct reachable profit indices

    static constexpr std::int64_t kWeightUnreachable = -1;
    std::int64_t& weight_at(std::int64_t a, std::int64_t l);
    std::int64_t weight_at(std::int64_t a, std::int64_t l) const;
};

PairTable dp_large(const std::vector<RoundedLargeItem>& rounded, std::int64_t capacity,
                   std::int64_t lambda, std::int64_t index_cap);

struct FptasOptions {
    bool prune_dominated = false; // optional over the final pair sweep
    std::string dump_pairs_path;  // write the pair table as CSV "a,l,weight"
};

// Feasible solution worth at least (1 - 6*eps) * OPT: dynamic program over
// serially rounded large items, half-heuristic completion over the reduced
// small items per surviving pair.
SolveReport fptas_solve(const Instance& inst, const Rat& epsilon,
                        const FptasOptions& options = {});

} // namespace kkp
