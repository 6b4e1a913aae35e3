#pragma once

#include <algorithm>
#include <vector>

#include "kkp/exact.hpp"
#include "kkp/instance.hpp"
#include "kkp/lp_half.hpp"
#include "kkp/rational.hpp"
#include "kkp/rng.hpp"

namespace kkp::test {

inline Instance make_instance(std::vector<std::pair<std::int64_t, std::int64_t>> pw,
                              std::int64_t c, std::int64_t k) {
    Instance inst;
    inst.capacity = c;
    inst.cardinality_bound = k;
    ItemId id = 0;
    for (auto [p, w] : pw) inst.items.push_back({id++, p, w});
    return inst;
}

// The worked reference instance: A(10,4) B(7,3) C(5,2) D(3,1), c=6, k=2.
inline Instance e1() {
    return make_instance({{10, 4}, {7, 3}, {5, 2}, {3, 1}}, 6, 2);
}

// Small random instances with derived capacity; never trivially solvable.
inline Instance random_instance(SplitMix64& rng, std::int64_t n_max = 18,
                                std::int64_t value_max = 100, bool correlated = false) {
    const std::int64_t n = rng.range(2, n_max);
    Instance inst;
    std::int64_t total_w = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        Item it;
        it.id = static_cast<ItemId>(i);
        it.weight = rng.range(1, value_max);
        it.profit = correlated
                        ? std::max<std::int64_t>(1, it.weight + rng.range(-value_max / 5,
                                                                          value_max / 5))
                        : rng.range(1, value_max);
        total_w += it.weight;
        inst.items.push_back(it);
    }
    std::int64_t max_w = 0;
    for (const Item& it : inst.items) max_w = std::max(max_w, it.weight);
    inst.capacity = std::max(total_w / 2, max_w);
    inst.cardinality_bound = rng.range(1, n);
    return inst;
}

// Independent exact bound for the two-constraint relaxation: the dual
// objective c*u + k*v + Σ (p_j - u*w_j - v)^+ minimized over every dual
// vertex candidate. Only used to cross-check the production solver.
inline Rat lp_dual_bound(const Instance& inst) {
    std::vector<std::pair<Rat, Rat>> cands;
    cands.emplace_back(Rat(0), Rat(0));
    for (const Item& a : inst.items) {
        cands.emplace_back(Rat(0), Rat(static_cast<long>(a.profit)));
        cands.emplace_back(make_rat(a.profit, a.weight), Rat(0));
        for (const Item& b : inst.items) {
            if (a.id >= b.id || a.weight == b.weight) continue;
            const Rat u = make_rat(a.profit - b.profit, a.weight - b.weight);
            const Rat v = Rat(static_cast<long>(a.profit)) - u * a.weight;
            if (u >= 0 && v >= 0) cands.emplace_back(u, v);
        }
    }
    bool first = true;
    Rat best;
    for (const auto& [u, v] : cands) {
        Rat value = u * inst.capacity + v * inst.cardinality_bound;
        for (const Item& it : inst.items) {
            const Rat slack = Rat(static_cast<long>(it.profit)) - u * it.weight - v;
            if (slack > 0) value += slack;
        }
        if (first || value < best) {
            best = value;
            first = false;
        }
    }
    return best;
}

} // namespace kkp::test
