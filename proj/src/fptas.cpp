#include "kkp/fptas.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <unordered_map>

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

Partition partition_items(const Instance& inst, const Rat& epsilon, std::int64_t p_h) {
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");
    Partition out;
    const Rat threshold = epsilon * p_h;
    const Int num = threshold.get_num();
    const Int den = threshold.get_den();
    for (const Item& it : inst.items) {
        if (Int(it.profit) * den > num) out.large.push_back(it);
        else out.small.push_back(it);
    }
    out.lambda = std::min<std::int64_t>(inst.cardinality_bound, floor_i64(Rat(2) / epsilon));
    return out;
}

SerialRounded serial_round_large(std::span<const Item> large, const Rat& epsilon,
                                 std::int64_t p_h, std::int64_t lambda) {
    require(lambda >= 1, "lambda must be >= 1");
    const Rat unit = epsilon * p_h / lambda; // also the geometric base a_1
    for (const Item& it : large)
        require(Rat(static_cast<long>(it.profit)) > Rat(epsilon * p_h),
                "item at or below the large-profit threshold");

    SerialRounded out;
    if (large.empty()) return out;

    const RoundingContext ctx{epsilon, lambda, p_h};
    const PureReduction geo = geometric_reduce(large, ctx);
    out.geometric_dropped = geo.dropped_caps;

    const Rat ratio = Rat(1) / (Rat(1) - epsilon);
    std::vector<std::int64_t> seen_indices;
    for (const ReducedClass& cls : geo.classes) {
        // Geometric value a_1 * r^(j-1); arithmetic stage keeps ⌊value/unit⌋ =
        // ⌊r^(j-1)⌋ grid units. Every large profit strictly exceeds
        // lambda*unit, so clamping the index up to lambda stays below the
        // original profit.
        const Rat power = pow_rat(ratio, static_cast<std::uint64_t>(cls.class_index - 1));
        const std::int64_t index = std::max(lambda, floor_i64(power));
        internal_check(Rat(static_cast<long>(index)) * unit <=
                           Rat(static_cast<long>(cls.kept.front().profit)),
                       "rounded index exceeds an original profit");
        for (const Item& it : cls.kept) out.items.push_back({it, index});
        seen_indices.push_back(index);
    }
    std::sort(seen_indices.begin(), seen_indices.end());
    out.distinct_indices = static_cast<std::int64_t>(
        std::unique(seen_indices.begin(), seen_indices.end()) - seen_indices.begin());
    return out;
}

std::int64_t& PairTable::weight_at(std::int64_t a, std::int64_t l) {
    return weight[static_cast<std::size_t>(a * (lambda + 1) + l)];
}

std::int64_t PairTable::weight_at(std::int64_t a, std::int64_t l) const {
    return weight[static_cast<std::size_t>(a * (lambda + 1) + l)];
}

PairTable dp_large(const std::vector<RoundedLargeItem>& rounded, std::int64_t capacity,
                   std::int64_t lambda, std::int64_t index_cap) {
    internal_check(lambda >= 1 && index_cap >= 0, "bad dp axis bounds");
    PairTable table;
    table.lambda = lambda;
    table.index_cap = index_cap;
    const std::size_t n_states = static_cast<std::size_t>((index_cap + 1) * (lambda + 1));
    table.weight.assign(n_states, PairTable::kWeightUnreachable);
    table.items.assign(n_states, {});
    table.weight_at(0, 0) = 0;

    // Single-buffered update: sweep the profit-index axis downward per item.
    for (const RoundedLargeItem& rli : rounded) {
        const std::int64_t pi = rli.profit_index;
        const std::int64_t wi = rli.item.weight;
        if (pi > index_cap || wi > capacity) continue;
        for (std::int64_t a = index_cap; a >= pi; --a) {
            for (std::int64_t l = lambda; l >= 1; --l) {
                const std::int64_t from = table.weight_at(a - pi, l - 1);
                if (from == PairTable::kWeightUnreachable) continue;
                const std::int64_t cand = from + wi;
                if (cand > capacity) continue;
                std::int64_t& slot = table.weight_at(a, l);
                if (slot == PairTable::kWeightUnreachable || cand < slot) {
                    slot = cand;
                    auto& ids = table.items[static_cast<std::size_t>(a * (lambda + 1) + l)];
                    ids = table.items[static_cast<std::size_t>((a - pi) * (lambda + 1) + l - 1)];
                    ids.push_back(rli.item.id);
                }
            }
        }
    }

    for (std::int64_t a = 0; a <= index_cap; ++a) {
        for (std::int64_t l = 0; l <= lambda; ++l) {
            if (table.weight_at(a, l) != PairTable::kWeightUnreachable) {
                ++table.value_set_size;
                break;
            }
        }
    }
    return table;
}

SolveReport fptas_solve(const Instance& inst, const Rat& epsilon, const FptasOptions& options) {
    const auto start = Clock::now();
    require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0,1)");

    SolveReport report;
    report.algorithm = "fptas";
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

    Partition parts = partition_items(inst, epsilon, anchor.value);
    const std::int64_t lambda = std::max<std::int64_t>(1, parts.lambda);

    SerialRounded rounded = serial_round_large(parts.large, epsilon, anchor.value, lambda);
    const std::int64_t index_cap = 2 * floor_i64(Rat(lambda) / epsilon);
    PairTable table = dp_large(rounded.items, c, lambda, index_cap);

    if (!options.dump_pairs_path.empty()) {
        std::ofstream out(options.dump_pairs_path, std::ios::binary);
        require(out.good(), "cannot write " + options.dump_pairs_path);
        out << "a,l,weight\n";
        for (std::int64_t a = 0; a <= table.index_cap; ++a)
            for (std::int64_t l = 0; l <= table.lambda; ++l)
                if (table.weight_at(a, l) != PairTable::kWeightUnreachable)
                    out << a << ',' << l << ',' << table.weight_at(a, l) << '\n';
    }

    const ReducedSet small_reduced = reduce_items(parts.small, {epsilon, k, anchor.value});
    const std::vector<Item> small_pool = small_reduced.all_kept();

    std::unordered_map<ItemId, const Item*> large_by_id;
    for (const RoundedLargeItem& rli : rounded.items)
        large_by_id.emplace(rli.item.id, &rli.item);

    struct PairRef {
        std::int64_t a, l, weight;
    };
    std::vector<PairRef> pairs;
    for (std::int64_t a = 0; a <= table.index_cap; ++a)
        for (std::int64_t l = 0; l <= table.lambda; ++l)
            if (table.weight_at(a, l) != PairTable::kWeightUnreachable)
                pairs.push_back({a, l, table.weight_at(a, l)});

    if (options.prune_dominated) {
        std::vector<PairRef> kept;
        for (const PairRef& p : pairs) {
            bool dominated = false;
            for (const PairRef& q : pairs) {
                if (q.a == p.a && q.l == p.l) continue;
                if (q.a >= p.a && q.l <= p.l && q.weight <= p.weight) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) kept.push_back(p);
        }
        pairs = std::move(kept);
    }

    struct Best {
        std::int64_t value = -1;
        std::int64_t a = 0, l = 0;
        std::vector<ItemId> ids;
    };
    const int threads = thread_count();
    std::vector<Best> local(static_cast<std::size_t>(threads));

#pragma omp parallel for num_threads(threads) schedule(dynamic, 4) if (threads > 1)
    for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(pairs.size()); ++pi) {
        const PairRef& pr = pairs[static_cast<std::size_t>(pi)];
        const auto& large_ids =
            table.items[static_cast<std::size_t>(pr.a * (table.lambda + 1) + pr.l)];
        std::int64_t large_profit = 0;
        for (ItemId id : large_ids) large_profit += large_by_id.at(id)->profit;

        const HalfResult fill = half_fill(small_pool, c - pr.weight, k - pr.l);
        const std::int64_t value = large_profit + fill.value;

        Best& slot = local[static_cast<std::size_t>(omp_get_thread_num())];
        const bool better =
            value > slot.value ||
            (value == slot.value && (pr.a < slot.a || (pr.a == slot.a && pr.l < slot.l)));
        if (better) {
            slot.value = value;
            slot.a = pr.a;
            slot.l = pr.l;
            slot.ids = large_ids;
            slot.ids.insert(slot.ids.end(), fill.solution.selected.begin(),
                            fill.solution.selected.end());
        }
    }

    Best best;
    for (const Best& slot : local) {
        if (slot.value < 0) continue;
        const bool better =
            slot.value > best.value ||
            (slot.value == best.value &&
             (slot.a < best.a || (slot.a == best.a && slot.l < best.l)));
        if (best.value < 0 || better) best = slot;
    }
    internal_check(best.value >= 0, "pair sweep produced no candidate");

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
    report.counters.emplace_back("lambda", lambda);
    report.counters.emplace_back("large", static_cast<std::int64_t>(parts.large.size()));
    report.counters.emplace_back("small", static_cast<std::int64_t>(parts.small.size()));
    report.counters.emplace_back("rounded_large", static_cast<std::int64_t>(rounded.items.size()));
    report.counters.emplace_back("small_reduced", small_reduced.total);
    report.counters.emplace_back("pairs", static_cast<std::int64_t>(pairs.size()));
    report.counters.emplace_back("beta", table.value_set_size);
    report.counters.emplace_back("anchor", anchor.value);
    report.wall_ns = elapsed_ns(start);
    return report;
}

} // namespace kkp
