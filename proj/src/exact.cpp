#include "kkp/exact.hpp"

#include <omp.h>

#include <algorithm>
#include <vector>

#include "kkp/parallel.hpp"

namespace kkp {

namespace {

struct EnumBest {
    std::int64_t profit = -1;
    std::int64_t weight = 0;
    std::uint32_t mask = 0;
};

// Prefer higher profit, then lower weight, then the lexicographically
// smallest id set (masks enumerate position-sorted items, so compare the
// expanded position lists).
bool enum_better(const EnumBest& a, const EnumBest& b, int n) {
    if (a.profit != b.profit) return a.profit > b.profit;
    if (a.weight != b.weight) return a.weight < b.weight;
    std::vector<int> pa, pb;
    for (int i = 0; i < n; ++i) {
        if (a.mask >> i & 1u) pa.push_back(i);
        if (b.mask >> i & 1u) pb.push_back(i);
    }
    return pa < pb;
}

} // namespace

OracleResult solve_exact_enum(const Instance& inst) {
    const int n = static_cast<int>(inst.n());
    require(n >= 1, "empty instance");
    require(n <= 25, "subset enumeration refuses n > 25; use the dp oracle");
    const std::int64_t c = inst.capacity;
    const std::int64_t k = inst.cardinality_bound;
    const std::uint32_t total = 1u << n;

    const int threads = thread_count();
    std::vector<EnumBest> best(static_cast<std::size_t>(std::max(threads, 1)));

#pragma omp parallel for num_threads(threads) schedule(static) if (threads > 1 && n >= 14)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m) {
        const std::uint32_t mask = static_cast<std::uint32_t>(m);
        if (__builtin_popcount(mask) > k) continue;
        std::int64_t w = 0, p = 0;
        bool fits = true;
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            w += inst.items[static_cast<std::size_t>(i)].weight;
            if (w > c) {
                fits = false;
                break;
            }
            p += inst.items[static_cast<std::size_t>(i)].profit;
        }
        if (!fits) continue;
        EnumBest cand{p, w, mask};
        EnumBest& slot = best[static_cast<std::size_t>(omp_get_thread_num())];
        if (slot.profit < 0 || enum_better(cand, slot, n)) slot = cand;
    }

    EnumBest winner;
    for (const EnumBest& b : best)
        if (b.profit >= 0 && (winner.profit < 0 || enum_better(b, winner, n))) winner = b;
    internal_check(winner.profit >= 0, "enumeration found no feasible subset");

    OracleResult out;
    out.method = OracleMethod::SubsetEnum;
    out.opt_value = winner.profit;
    std::vector<ItemId> ids;
    for (int i = 0; i < n; ++i)
        if (winner.mask >> i & 1u) ids.push_back(inst.items[static_cast<std::size_t>(i)].id);
    out.witness = evaluate(inst, ids);
    internal_check(out.witness.feasible && out.witness.profit_total == out.opt_value,
                   "enumeration witness does not reproduce its value");
    return out;
}

OracleResult solve_exact_dp(const Instance& inst, std::int64_t cell_budget) {
    const std::int64_t n = inst.n();
    require(n >= 1, "empty instance");
    const std::int64_t c = inst.capacity;
    const std::int64_t k = std::min<std::int64_t>(inst.cardinality_bound, n);
    const std::int64_t cells = (c + 1) * (k + 1);
    require(cells <= cell_budget,
            "dp oracle needs " + std::to_string(cells) + " cells, budget is " +
                std::to_string(cell_budget));
    const std::int64_t take_bits = n * cells;
    require(take_bits / 8 <= cell_budget,
            "dp witness storage needs " + std::to_string(take_bits) + " bits, budget is " +
                std::to_string(cell_budget * 8));

    // f[l][w] = best profit with <= l items and <= w weight.
    std::vector<std::int64_t> f(static_cast<std::size_t>(cells), 0);
    std::vector<std::uint64_t> take(static_cast<std::size_t>((take_bits + 63) / 64), 0);
    auto cell = [&](std::int64_t l, std::int64_t w) -> std::int64_t& {
        return f[static_cast<std::size_t>(l * (c + 1) + w)];
    };
    auto mark = [&](std::int64_t i, std::int64_t l, std::int64_t w) {
        const std::int64_t bit = i * cells + l * (c + 1) + w;
        take[static_cast<std::size_t>(bit >> 6)] |= 1ull << (bit & 63);
    };
    auto marked = [&](std::int64_t i, std::int64_t l, std::int64_t w) {
        const std::int64_t bit = i * cells + l * (c + 1) + w;
        return (take[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1ull;
    };

    for (std::int64_t i = 0; i < n; ++i) {
        const Item& it = inst.items[static_cast<std::size_t>(i)];
        if (it.weight > c) continue;
        for (std::int64_t l = k; l >= 1; --l) {
            for (std::int64_t w = c; w >= it.weight; --w) {
                const std::int64_t cand = cell(l - 1, w - it.weight) + it.profit;
                if (cand > cell(l, w)) {
                    cell(l, w) = cand;
                    mark(i, l, w);
                }
            }
        }
    }

    OracleResult out;
    out.method = OracleMethod::Dp;
    out.opt_value = cell(k, c);

    std::vector<ItemId> ids;
    std::int64_t l = k, w = c;
    for (std::int64_t i = n - 1; i >= 0; --i) {
        if (l > 0 && marked(i, l, w)) {
            const Item& it = inst.items[static_cast<std::size_t>(i)];
            ids.push_back(it.id);
            --l;
            w -= it.weight;
        }
    }
    out.witness = evaluate(inst, ids);
    internal_check(out.witness.feasible && out.witness.profit_total == out.opt_value,
                   "dp witness does not reproduce its value");
    return out;
}

} // namespace kkp
