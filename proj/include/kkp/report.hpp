#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kkp/instance.hpp"
#include "kkp/rational.hpp"

namespace kkp {

struct SolveReport {
    std::string algorithm;
    std::optional<Rat> epsilon;
    std::int64_t value = 0;
    std::vector<ItemId> item_ids; // ascending
    bool feasible = false;
    std::int64_t certified_lower_bound = 0;
    std::optional<std::int64_t> opt_if_known;
    std::uint64_t wall_ns = 0;
    std::vector<std::pair<std::string, std::int64_t>> counters;

    std::string to_json() const;
    std::string to_text() const;
};

// Re-evaluates the reported ids against the instance and checks they
// reproduce value and feasibility exactly.
void check_report(const SolveReport& report, const Instance& inst);

} // namespace kkp
