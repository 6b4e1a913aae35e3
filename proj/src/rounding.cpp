#include "kkp/rounding.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "kkp/parallel.hpp"
#include "kkp/selection.hpp"

namespace kkp {

namespace {

bool lighter(const Item& a, const Item& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.id < b.id;
}

// Keep the `cap` lightest of a class without sorting the whole bucket, then
// order the survivors for deterministic downstream iteration.
void cap_class(ReducedClass& cls) {
    cls.seen = static_cast<std::int64_t>(cls.kept.size());
    if (cls.seen > cls.cap) {
        select_k_smallest(cls.kept, static_cast<std::size_t>(cls.cap), lighter);
        cls.kept.resize(static_cast<std::size_t>(cls.cap));
    }
    std::sort(cls.kept.begin(), cls.kept.end(), lighter);
}

std::vector<ReducedClass> assemble_classes(std::map<std::int64_t, std::vector<Item>>&& buckets,
                                           const std::function<std::int64_t(std::int64_t)>& cap_of,
                                           std::int64_t& total, std::int64_t& dropped_caps) {
    std::vector<ReducedClass> out;
    out.reserve(buckets.size());
    for (auto& [index, items] : buckets) {
        ReducedClass cls;
        cls.class_index = index;
        cls.cap = cap_of(index);
        cls.kept = std::move(items);
        cap_class(cls);
        total += static_cast<std::int64_t>(cls.kept.size());
        dropped_caps += cls.seen - static_cast<std::int64_t>(cls.kept.size());
        out.push_back(std::move(cls));
    }
    return out;
}

} // namespace

void validate_context(const RoundingContext& ctx) {
    require(ctx.epsilon > 0 && ctx.epsilon < 1, "epsilon must lie in (0,1)");
    require(ctx.gamma >= 1, "gamma must be >= 1");
    require(ctx.p_h >= 1, "anchor value must be >= 1");
}

HybridSequence hybrid_sequence(const RoundingContext& ctx) {
    return hybrid_sequence(ctx, ctx.p_h);
}

HybridSequence hybrid_sequence(const RoundingContext& ctx, std::int64_t max_profit) {
    validate_context(ctx);
    HybridSequence seq;
    seq.ctx = ctx;
    seq.base = ctx.base();
    seq.ratio = Rat(1) / (Rat(1) - ctx.epsilon);
    seq.arith_count = floor_i64(Rat(2) / ctx.epsilon);

    // alpha = ⌊log_r(arith_count)⌋ + 1, exactly.
    {
        std::int64_t t = 0;
        Rat power = 1;
        while (power * seq.ratio <= seq.arith_count) {
            power *= seq.ratio;
            ++t;
        }
        seq.alpha = t + 1;
    }
    // beta = largest j with r^(j-1) <= gamma/eps.
    {
        const Rat limit = Rat(ctx.gamma) / ctx.epsilon;
        std::int64_t j = 1;
        Rat power = 1;
        while (power * seq.ratio <= limit) {
            power *= seq.ratio;
            ++j;
        }
        seq.beta = j;
    }
    seq.psi = seq.beta - seq.alpha + seq.arith_count + 1;

    // Geometric terms a_1 * r^(alpha + u), cached one past the largest profit
    // the sequence will ever classify.
    Rat geo = seq.base * pow_rat(seq.ratio, static_cast<std::uint64_t>(seq.alpha));
    const Rat cover(static_cast<long>(std::max(max_profit, ctx.p_h)));
    seq.geo_terms_.push_back(geo);
    while (seq.geo_terms_.back() <= cover) {
        geo *= seq.ratio;
        seq.geo_terms_.push_back(geo);
    }

    internal_check(seq.term(seq.psi) > Rat(static_cast<long>(ctx.p_h)),
                   "hybrid grid failed to clear the anchor value");
    for (std::int64_t i = 1; i < std::min<std::int64_t>(seq.psi + 1, seq.max_index()); ++i)
        internal_check(seq.term(i) < seq.term(i + 1), "hybrid grid not strictly increasing");
    return seq;
}

Rat HybridSequence::term(std::int64_t i) const {
    internal_check(i >= 1 && i <= max_index(), "sequence index out of cached range");
    if (i <= arith_count) return base * i;
    return geo_terms_[static_cast<std::size_t>(i - arith_count - 1)];
}

std::int64_t HybridSequence::max_index() const {
    return arith_count + static_cast<std::int64_t>(geo_terms_.size());
}

std::int64_t HybridSequence::classify(std::int64_t profit) const {
    const Rat p(static_cast<long>(profit));
    require(p >= base, "profit below the first grid value");
    // Arithmetic region: ⌊p/a_1⌋ decided by exact integer division.
    Int ia_z;
    mpz_fdiv_q(ia_z.get_mpz_t(), Int(Int(profit) * base.get_den()).get_mpz_t(),
               base.get_num().get_mpz_t());
    const std::int64_t ia = to_i64(ia_z);
    if (ia < arith_count) return ia;
    if (p < geo_terms_.front()) return arith_count;

    // Geometric region: float log estimate, corrected by exact comparisons.
    const double est = (std::log(static_cast<double>(profit)) - std::log(to_double(geo_terms_.front()))) /
                       std::log(to_double(ratio));
    std::int64_t u = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::llround(est)), 0,
        static_cast<std::int64_t>(geo_terms_.size()) - 1);
    while (u + 1 < static_cast<std::int64_t>(geo_terms_.size()) &&
           geo_terms_[static_cast<std::size_t>(u + 1)] <= p)
        ++u;
    while (u > 0 && geo_terms_[static_cast<std::size_t>(u)] > p) --u;
    internal_check(geo_terms_[static_cast<std::size_t>(u)] <= p,
                   "geometric classification out of cached range");
    return arith_count + 1 + u;
}

std::int64_t HybridSequence::cap(std::int64_t i) const {
    internal_check(i >= 1, "class index must be positive");
    if (i <= arith_count) return ctx.gamma;
    const std::int64_t t = alpha + i - arith_count - 1;
    const Rat raw = Rat(2 * ctx.gamma) / ctx.epsilon *
                    pow_rat(Rat(1) - ctx.epsilon, static_cast<std::uint64_t>(t));
    return floor_i64(raw);
}

std::vector<Item> ReducedSet::all_kept() const {
    std::vector<Item> out;
    out.reserve(static_cast<std::size_t>(total));
    for (const ReducedClass& cls : classes)
        out.insert(out.end(), cls.kept.begin(), cls.kept.end());
    return out;
}

const ReducedClass* ReducedSet::find_class(std::int64_t index) const {
    for (const ReducedClass& cls : classes)
        if (cls.class_index == index) return &cls;
    return nullptr;
}

ReducedSet reduce_items(std::span<const Item> items, const RoundingContext& ctx) {
    validate_context(ctx);
    std::int64_t max_p = 1;
    for (const Item& it : items) max_p = std::max(max_p, it.profit);

    ReducedSet out{hybrid_sequence(ctx, max_p), {}, 0, 0, 0};
    const HybridSequence& seq = out.sequence;

    // Drop rule p <= a_1 as one integer comparison: p * den(a_1) <= num(a_1).
    const Int a1_num = seq.base.get_num();
    const Int a1_den = seq.base.get_den();

    const std::size_t n_classes = static_cast<std::size_t>(seq.max_index()) + 1;
    std::vector<std::vector<Item>> buckets(n_classes);
    std::int64_t dropped_small = 0;

    const int threads = thread_count();
    if (threads > 1 && items.size() >= 8192) {
        std::vector<std::vector<std::vector<Item>>> local(
            static_cast<std::size_t>(threads), std::vector<std::vector<Item>>(n_classes));
        std::vector<std::int64_t> local_drop(static_cast<std::size_t>(threads), 0);
#pragma omp parallel for num_threads(threads) schedule(static)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(items.size()); ++j) {
            const int tid = omp_get_thread_num();
            const Item& it = items[static_cast<std::size_t>(j)];
            if (Int(it.profit) * a1_den <= a1_num) {
                ++local_drop[static_cast<std::size_t>(tid)];
                continue;
            }
            local[static_cast<std::size_t>(tid)]
                 [static_cast<std::size_t>(seq.classify(it.profit))].push_back(it);
        }
        for (int t = 0; t < threads; ++t) {
            dropped_small += local_drop[static_cast<std::size_t>(t)];
            for (std::size_t c = 0; c < n_classes; ++c)
                buckets[c].insert(buckets[c].end(), local[static_cast<std::size_t>(t)][c].begin(),
                                  local[static_cast<std::size_t>(t)][c].end());
        }
    } else {
        for (const Item& it : items) {
            if (Int(it.profit) * a1_den <= a1_num) {
                ++dropped_small;
                continue;
            }
            buckets[static_cast<std::size_t>(seq.classify(it.profit))].push_back(it);
        }
    }

    out.dropped_small = dropped_small;
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (buckets[c].empty()) continue;
        ReducedClass cls;
        cls.class_index = static_cast<std::int64_t>(c);
        cls.cap = seq.cap(cls.class_index);
        cls.kept = std::move(buckets[c]);
        cap_class(cls);
        out.total += static_cast<std::int64_t>(cls.kept.size());
        out.dropped_caps += cls.seen - static_cast<std::int64_t>(cls.kept.size());
        out.classes.push_back(std::move(cls));
    }
    return out;
}

ReducedSet parallel_reduce(const Instance& inst, const RoundingContext& ctx) {
    return reduce_items(inst.items, ctx);
}

PureReduction arithmetic_reduce(std::span<const Item> items, const RoundingContext& ctx) {
    validate_context(ctx);
    const Rat a1 = ctx.base();
    std::map<std::int64_t, std::vector<Item>> buckets;
    for (const Item& it : items) {
        require(Rat(static_cast<long>(it.profit)) >= a1, "small-profit item not pre-filtered");
        Int cls;
        mpz_fdiv_q(cls.get_mpz_t(), Int(Int(it.profit) * a1.get_den()).get_mpz_t(),
                   a1.get_num().get_mpz_t());
        buckets[to_i64(cls)].push_back(it);
    }
    PureReduction out;
    auto cap_of = [&](std::int64_t i) {
        const Rat large_cap = Rat(2 * ctx.gamma) / (ctx.epsilon * i);
        return std::min<std::int64_t>(ctx.gamma, floor_i64(large_cap));
    };
    out.classes = assemble_classes(std::move(buckets), cap_of, out.total, out.dropped_caps);
    return out;
}

PureReduction geometric_reduce(std::span<const Item> items, const RoundingContext& ctx) {
    validate_context(ctx);
    const Rat a1 = ctx.base();
    const Rat r = Rat(1) / (Rat(1) - ctx.epsilon);

    std::int64_t max_p = ctx.p_h;
    for (const Item& it : items) max_p = std::max(max_p, it.profit);
    std::vector<Rat> terms{a1}; // terms[j-1] = a_1 * r^(j-1)
    while (terms.back() <= Rat(static_cast<long>(max_p))) terms.push_back(terms.back() * r);

    auto classify = [&](std::int64_t profit) {
        const Rat p(static_cast<long>(profit));
        require(p >= a1, "small-profit item not pre-filtered");
        const double est = (std::log(static_cast<double>(profit)) - std::log(to_double(a1))) /
                           std::log(to_double(r));
        std::int64_t j = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::llround(est)), 0,
            static_cast<std::int64_t>(terms.size()) - 1);
        while (j + 1 < static_cast<std::int64_t>(terms.size()) &&
               terms[static_cast<std::size_t>(j + 1)] <= p)
            ++j;
        while (j > 0 && terms[static_cast<std::size_t>(j)] > p) --j;
        return j + 1;
    };

    std::map<std::int64_t, std::vector<Item>> buckets;
    for (const Item& it : items) buckets[classify(it.profit)].push_back(it);

    PureReduction out;
    auto cap_of = [&](std::int64_t j) {
        const Rat large_cap = Rat(2 * ctx.gamma) / ctx.epsilon *
                              pow_rat(Rat(1) - ctx.epsilon, static_cast<std::uint64_t>(j - 1));
        return std::min<std::int64_t>(ctx.gamma, floor_i64(large_cap));
    };
    out.classes = assemble_classes(std::move(buckets), cap_of, out.total, out.dropped_caps);
    return out;
}

std::vector<ClassedItem> classify_items(std::span<const Item> items, const HybridSequence& seq) {
    std::vector<ClassedItem> out;
    out.reserve(items.size());
    for (const Item& it : items) {
        require(Rat(static_cast<long>(it.profit)) >= seq.base,
                "profit below the first grid value");
        out.push_back({it, seq.classify(it.profit)});
    }
    return out;
}

std::int64_t Configuration::size() const {
    std::int64_t s = 0;
    for (std::int64_t c : counts) s += c;
    return s;
}

Configuration configuration_of(std::span<const Item> items, const HybridSequence& seq) {
    require(static_cast<std::int64_t>(items.size()) <= seq.ctx.gamma,
            "set larger than the reduction bound");
    Configuration cfg;
    cfg.counts.assign(static_cast<std::size_t>(seq.psi - 1), 0);
    for (const ClassedItem& ci : classify_items(items, seq)) {
        require(ci.class_index <= seq.psi - 1, "profit above the grid range");
        ++cfg.counts[static_cast<std::size_t>(ci.class_index - 1)];
    }
    return cfg;
}

std::vector<Item> match_configuration(const Configuration& cfg, const ReducedSet& reduced) {
    std::vector<Item> out;
    for (std::size_t i = 0; i < cfg.counts.size(); ++i) {
        const std::int64_t want = cfg.counts[i];
        if (want == 0) continue;
        const std::int64_t index = static_cast<std::int64_t>(i) + 1;
        const ReducedClass* cls = reduced.find_class(index);
        const std::int64_t have = cls ? static_cast<std::int64_t>(cls->kept.size()) : 0;
        require(want <= have, "configuration unrealizable: class " + std::to_string(index) +
                                  " needs " + std::to_string(want) + " items, reduced set has " +
                                  std::to_string(have));
        out.insert(out.end(), cls->kept.begin(), cls->kept.begin() + want);
    }
    return out;
}

} // namespace kkp
