#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kkp/errors.hpp"

namespace kkp {

using ItemId = std::uint32_t;

struct Item {
    ItemId id = 0;
    std::int64_t profit = 0;
    std::int64_t weight = 0;
};

struct Instance {
    std::vector<Item> items;
    std::int64_t capacity = 0;
    std::int64_t cardinality_bound = 0; // k

    std::int64_t n() const { return static_cast<std::int64_t>(items.size()); }
    std::int64_t total_weight() const;
    std::int64_t max_profit() const;
};

struct Solution {
    std::vector<ItemId> selected; // ascending ids
    std::int64_t profit_total = 0;
    std::int64_t weight_total = 0;
    bool feasible = false;
};

struct NormalizationLog {
    std::vector<ItemId> removed;    // weight exceeded raw capacity
    bool trivially_solvable = false; // all survivors fit both bounds
    bool k_clamped = false;
    std::string note;
};

struct Normalized {
    Instance instance;
    NormalizationLog log;
};

// Drops items that can never be packed (w_j > c), clamps k to the surviving
// item count, and flags instances solved by taking everything. Errors when
// nothing packable remains.
Normalized normalize(const Instance& raw);

// Exact totals and feasibility for a set of item ids. Never mutates.
Solution evaluate(const Instance& inst, std::span<const ItemId> ids);

Solution take_all(const Instance& inst);

// --- file formats ---------------------------------------------------------
// Text: line 1 "n c k", then n lines "p_j w_j"; item ids are 0-based line
// order. JSON mirror: {"capacity","cardinality_bound","items":[{"profit","weight"}]}.

Instance parse_instance_text(const std::string& text);
Instance parse_instance_json(const std::string& text);
Instance parse_instance(const std::string& text); // sniffs the format
Instance read_instance_file(const std::string& path);

std::string write_instance_text(const Instance& inst);
std::string write_instance_json(const Instance& inst);
void write_instance_file(const Instance& inst, const std::string& path, bool json);

} // namespace kkp
