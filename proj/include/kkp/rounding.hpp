#pragma once

#include <span>
#include <vector>

#include "kkp/instance.hpp"
#include "kkp/rational.hpp"

namespace kkp {

struct RoundingContext {
    Rat epsilon;              // in (0,1)
    std::int64_t gamma = 1;   // solution size bound the reduction targets
    std::int64_t p_h = 1;     // heuristic anchor value

    Rat base() const { return epsilon * p_h / gamma; } // a_1
};

void validate_context(const RoundingContext& ctx);

// Profit grid: arithmetic steps a_1*i up to ⌊2/eps⌋ terms, then geometric
// steps a_1*r^t with r = 1/(1-eps). Terms are exact rationals; classification
// uses a floating-point log estimate corrected by exact comparisons.
class HybridSequence {
public:
    RoundingContext ctx;
    std::int64_t arith_count = 0; // ⌊2/eps⌋
    std::int64_t alpha = 0;       // first geometric exponent
    std::int64_t beta = 0;        // last geometric index with term <= p_h
    std::int64_t psi = 0;         // first index with term > p_h
    Rat ratio;                    // 1/(1-eps)
    Rat base;                     // a_1

    Rat term(std::int64_t i) const;                   // i >= 1
    std::int64_t classify(std::int64_t profit) const; // largest i: term(i) <= profit
    std::int64_t cap(std::int64_t i) const;           // per-class keep limit n_i
    std::int64_t max_index() const;

private:
    friend HybridSequence hybrid_sequence(const RoundingContext&, std::int64_t);
    std::vector<Rat> geo_terms_; // term(arith_count + 1 + u), covers past max profit
};

HybridSequence hybrid_sequence(const RoundingContext& ctx);
HybridSequence hybrid_sequence(const RoundingContext& ctx, std::int64_t max_profit);

struct ClassedItem {
    Item item;
    std::int64_t class_index = 0;
};

// Tags every item with its grid class; profits keep their original values.
// Rejects profits below a_1.
std::vector<ClassedItem> classify_items(std::span<const Item> items,
                                        const HybridSequence& seq);

struct ReducedClass {
    std::int64_t class_index = 0;
    std::int64_t cap = 0;
    std::int64_t seen = 0;          // classified into this class before capping
    std::vector<Item> kept;         // the `cap` lightest, ascending (weight, id)
};

struct ReducedSet {
    HybridSequence sequence;
    std::vector<ReducedClass> classes; // ascending class_index, non-empty only
    std::int64_t total = 0;
    std::int64_t dropped_small = 0; // p <= a_1
    std::int64_t dropped_caps = 0;

    std::vector<Item> all_kept() const;
    const ReducedClass* find_class(std::int64_t index) const;
};

// Hybrid reduction: drops profits <= a_1, classifies the rest against the
// hybrid grid, keeps the n_i lightest per class by linear selection.
ReducedSet reduce_items(std::span<const Item> items, const RoundingContext& ctx);
ReducedSet parallel_reduce(const Instance& inst, const RoundingContext& ctx);

// Single-grid variants used by the tightness experiments and by the
// large-item preprocessing. Items with profit < a_1 are rejected.
struct PureReduction {
    std::vector<ReducedClass> classes;
    std::int64_t total = 0;
    std::int64_t dropped_caps = 0;
};
PureReduction arithmetic_reduce(std::span<const Item> items, const RoundingContext& ctx);
PureReduction geometric_reduce(std::span<const Item> items, const RoundingContext& ctx);

// Interval census of a set against the hybrid grid: counts[i-1] = #items with
// profit in [term(i), term(i+1)), i = 1..psi-1.
struct Configuration {
    std::vector<std::int64_t> counts;

    std::int64_t size() const;
};

Configuration configuration_of(std::span<const Item> items, const HybridSequence& seq);

// Cheapest realization of a configuration from the reduced set: per class the
// counts[i] lightest kept items. Errors naming the first deficient class.
std::vector<Item> match_configuration(const Configuration& cfg, const ReducedSet& reduced);

} // namespace kkp
