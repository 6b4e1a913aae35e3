#include "kkp/ptas.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "kkp/lp_half.hpp"
#include "kkp/parallel.hpp"

namespace kkp {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

} // namespace

std::int64_t ptas_depth(const Rat& epsilon, std::int64_t k) {
    require(epsilon > 0 && epsilon <= make_rat(1, 2), "epsilon must lie in (0, 1/2]");
    const Int inv_ceil = -floor_int(-(Rat(1) / epsilon));
    const std::int64_t ell = to_i64(inv_ceil) - 2;
    return std::max<std::int64_t>(0, std::min(ell, k));
}

std::vector<std::vector<ItemId>> enumerate_prefixes(const ReducedSet& reduced,
                                                    std::int64_t ell) {
    require(ell >= 1, "enumeration depth must be >= 1");
    std::vector<ItemId> ids;
    for (const Item& it : reduced.all_kept()) ids.push_back(it.id);
    std::sort(ids.begin(), ids.end());

    std::vector<std::vector<ItemId>> out;
    std::vector<ItemId> current;
    out.push_back(current); // the empty prefix comes first
    auto rec = [&](auto&& self, std::size_t start) -> void {
        for (std::size_t i = start; i < ids.size(); ++i) {
            current.push_back(ids[i]);
            out.push_back(current);
            if (static_cast<std::int64_t>(current.size()) < ell) self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

SolveReport ptas_solve(const Instance& inst, const Rat& epsilon, const PtasOptions& options) {
    const auto start = Clock::now();
    require(epsilon > 0 && epsilon <= make_rat(1, 2), "epsilon must lie in (0, 1/2]");

    SolveReport report;
    report.algorithm = "ptas";
    report.epsilon = epsilon;

    if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) {
        const Solution all = take_all(inst);
        report.value = all.profit_total;
        report.item_ids = all.selected;
        report.feasible = true;
        report.certified_lower_bound = all.profit_total;
        report.counters.emplace_back("trivial", 1);
        report.wall_ns = elapsed_ns(start);
        return report;
    }

    const std::int64_t c = inst.capacity;
    const std::int64_t k = inst.cardinality_bound;
    const HalfResult anchor = half_approx(inst);
    const std::int64_t ell = ptas_depth(epsilon, k);

    const ReducedSet n_k = reduce_items(inst.items, {epsilon, k, anchor.value});
    const std::vector<Item> pool_k = n_k.all_kept();

    struct Best {
        std::int64_t value = -1;
        std::int64_t index = 0; // enumeration index, for deterministic ties
        std::vector<ItemId> ids;
    };
    Best best;
    std::int64_t half_calls = 0;
    std::int64_t subsets = 0;
    std::int64_t n_ell_size = 0;

    if (ell == 0) {
        const HalfResult fill = half_fill(pool_k, c, k);
        best.value = fill.value;
        best.ids = fill.solution.selected;
        half_calls = 1;
    } else {
        const ReducedSet n_ell = reduce_items(inst.items, {epsilon, ell, anchor.value});
        n_ell_size = n_ell.total;
        const HybridSequence& seq = n_ell.sequence;
        const std::vector<std::vector<ItemId>> prefixes = enumerate_prefixes(n_ell, ell);
        subsets = static_cast<std::int64_t>(prefixes.size());

        std::unordered_map<ItemId, Item> ell_items;
        for (const Item& it : n_ell.all_kept()) ell_items.emplace(it.id, it);

        // Items of the wider reduction sorted by profit; each threshold index
        // h selects the prefix with profit < term(h+1).
        std::vector<Item> by_profit = pool_k;
        std::sort(by_profit.begin(), by_profit.end(), [](const Item& a, const Item& b) {
            if (a.profit != b.profit) return a.profit < b.profit;
            return a.id < b.id;
        });
        std::vector<std::int64_t> cutoff(static_cast<std::size_t>(seq.psi), 0);
        std::vector<std::size_t> prefix_end(static_cast<std::size_t>(seq.psi), 0);
        for (std::int64_t h = 0; h < seq.psi; ++h) {
            cutoff[static_cast<std::size_t>(h)] = to_i64(strict_floor_int(seq.term(h + 1)));
            const auto it = std::upper_bound(
                by_profit.begin(), by_profit.end(), cutoff[static_cast<std::size_t>(h)],
                [](std::int64_t value, const Item& item) { return value < item.profit; });
            prefix_end[static_cast<std::size_t>(h)] =
                static_cast<std::size_t>(it - by_profit.begin());
        }

        const int threads = thread_count();
        std::vector<Best> local(static_cast<std::size_t>(threads));
        std::vector<std::int64_t> local_calls(static_cast<std::size_t>(threads), 0);

#pragma omp parallel for num_threads(threads) schedule(dynamic, 8) if (threads > 1)
        for (std::int64_t li = 0; li < static_cast<std::int64_t>(prefixes.size()); ++li) {
            const std::vector<ItemId>& prefix_ids = prefixes[static_cast<std::size_t>(li)];
            std::int64_t w_l = 0, p_l = 0, min_p = 0;
            bool first = true;
            for (ItemId id : prefix_ids) {
                const Item& it = ell_items.at(id);
                w_l += it.weight;
                p_l += it.profit;
                min_p = first ? it.profit : std::min(min_p, it.profit);
                first = false;
            }
            if (w_l > c) continue;

            const std::int64_t h = prefix_ids.empty() ? 0 : seq.classify(min_p);
            internal_check(h + 1 <= seq.psi, "prefix threshold escaped the grid");

            std::unordered_set<ItemId> in_prefix(prefix_ids.begin(), prefix_ids.end());
            std::vector<Item> pool;
            const std::size_t end = prefix_end[static_cast<std::size_t>(h)];
            pool.reserve(end);
            for (std::size_t t = 0; t < end; ++t)
                if (!in_prefix.contains(by_profit[t].id)) pool.push_back(by_profit[t]);

            const std::int64_t residual =
                options.literal_residual ? k - ell
                                         : k - static_cast<std::int64_t>(prefix_ids.size());
            const HalfResult fill = half_fill(pool, c - w_l, residual);
            const int tid = omp_get_thread_num();
            ++local_calls[static_cast<std::size_t>(tid)];

            const std::int64_t value = p_l + fill.value;
            Best& slot = local[static_cast<std::size_t>(tid)];
            if (value > slot.value || (value == slot.value && li < slot.index)) {
                slot.value = value;
                slot.index = li;
                slot.ids = prefix_ids;
                slot.ids.insert(slot.ids.end(), fill.solution.selected.begin(),
                                fill.solution.selected.end());
            }
        }
        for (int t = 0; t < threads; ++t) {
            half_calls += local_calls[static_cast<std::size_t>(t)];
            const Best& slot = local[static_cast<std::size_t>(t)];
            if (slot.value < 0) continue;
            if (slot.value > best.value ||
                (slot.value == best.value && slot.index < best.index))
                best = slot;
        }
    }

    // The anchor solution keeps the bound unconditional.
    if (anchor.value > best.value) {
        best.value = anchor.value;
        best.ids = anchor.solution.selected;
    }

    const Solution sol = evaluate(inst, best.ids);
    internal_check(sol.feasible, "scheme produced an infeasible solution");
    internal_check(sol.profit_total == best.value, "scheme value does not re-evaluate");

    report.value = best.value;
    report.item_ids = sol.selected;
    report.feasible = true;
    report.certified_lower_bound = std::max(best.value, anchor.value);
    report.counters.emplace_back("ell", ell);
    report.counters.emplace_back("n_k", n_k.total);
    report.counters.emplace_back("n_ell", n_ell_size);
    report.counters.emplace_back("subsets", subsets);
    report.counters.emplace_back("half_calls", half_calls);
    report.counters.emplace_back("anchor", anchor.value);
    report.wall_ns = elapsed_ns(start);
    return report;
}

} // namespace kkp
