#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "kkp/exact.hpp"
#include "kkp/fptas.hpp"
#include "kkp/lp_half.hpp"
#include "support.hpp"

using namespace kkp;
using test::e1;
using test::make_instance;

namespace {

// Exhaustive reference for the pair table: minimum weight per exact
// (index-sum, cardinality) over all subsets within capacity.
std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> brute_pairs(
    const std::vector<RoundedLargeItem>& rounded, std::int64_t c) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> best;
    const std::size_t n = rounded.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::int64_t a = 0, l = 0, w = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1u) {
                a += rounded[i].profit_index;
                ++l;
                w += rounded[i].item.weight;
            }
        }
        if (w > c) continue;
        const auto key = std::make_pair(a, l);
        auto it = best.find(key);
        if (it == best.end() || w < it->second) best[key] = w;
    }
    return best;
}

} // namespace

TEST_CASE("partition splits strictly above eps times the anchor") {
    const Instance inst = normalize(e1()).instance;
    const Partition parts = partition_items(inst, make_rat(1, 2), 15); // threshold 7.5
    REQUIRE(parts.large.size() == 1);
    CHECK(parts.large[0].id == 0);
    CHECK(parts.small.size() == 3);
    CHECK(parts.lambda == 2);

    // Exactly at the threshold stays small.
    const Instance at = make_instance({{5, 2}, {5, 3}}, 4, 2);
    const Partition p2 = partition_items(at, make_rat(1, 2), 10);
    CHECK(p2.large.empty());
    CHECK(p2.small.size() == 2);
}

TEST_CASE("lambda follows min(k, floor(2/eps))") {
    Instance small_k = make_instance({{10, 1}, {10, 1}}, 1, 2);
    CHECK(partition_items(small_k, make_rat(3, 10), 5).lambda == 2);

    Instance k10;
    for (int i = 0; i < 12; ++i) k10.items.push_back({static_cast<ItemId>(i), 10, 1});
    k10.capacity = 12;
    k10.cardinality_bound = 10;
    CHECK(partition_items(k10, make_rat(3, 10), 5).lambda == 6); // min(10, ⌊2/0.3⌋)
}

TEST_CASE("serial rounding walks geometric then arithmetic") {
    // unit = 10/8 = 1.25, grid 1.25, 2.5, 5, 10, 20.
    std::vector<Item> large{{0, 9, 4}};
    const SerialRounded r = serial_round_large(large, make_rat(1, 2), 10, 4);
    REQUIRE(r.items.size() == 1);
    CHECK(r.items[0].profit_index == 4); // geometric value 5, then ⌊5/1.25⌋

    std::vector<Item> anchor_item{{0, 10, 4}};
    const SerialRounded top = serial_round_large(anchor_item, make_rat(1, 2), 10, 4);
    CHECK(top.items[0].profit_index == 8); // = lambda/eps

    // For eps=1/2 the geometric values are exact grid multiples, so the
    // arithmetic stage is the identity on them.
    for (std::int64_t p : {6, 7, 9, 10}) {
        std::vector<Item> one{{0, p, 1}};
        const SerialRounded s = serial_round_large(one, make_rat(1, 2), 10, 4);
        const Rat unit = make_rat(10, 8);
        const Rat rounded_value = Rat(static_cast<long>(s.items[0].profit_index)) * unit;
        CHECK(rounded_value <= Rat(static_cast<long>(p)));
        CHECK(rounded_value * 2 > Rat(static_cast<long>(p))); // keeps a 1-eps fraction
    }

    std::vector<Item> below{{0, 5, 1}}; // not strictly above eps*p_h = 5
    CHECK_THROWS_AS(serial_round_large(below, make_rat(1, 2), 10, 4), InputError);
}

TEST_CASE("pair table matches exhaustive enumeration on the worked example") {
    std::vector<RoundedLargeItem> rounded{
        {{0, 0, 3}, 6}, {{1, 0, 2}, 6}, {{2, 0, 5}, 8}};
    const PairTable table = dp_large(rounded, 12, 3, 24);
    CHECK(table.weight_at(12, 2) == 5); // both index-6 items
    CHECK(table.weight_at(20, 3) == 10);
    CHECK(table.weight_at(0, 0) == 0);

    const auto brute = brute_pairs(rounded, 12);
    for (std::int64_t a = 0; a <= table.index_cap; ++a) {
        for (std::int64_t l = 0; l <= table.lambda; ++l) {
            const auto it = brute.find({a, l});
            if (it == brute.end()) {
                CHECK(table.weight_at(a, l) == PairTable::kWeightUnreachable);
            } else {
                CHECK(table.weight_at(a, l) == it->second);
            }
        }
    }
}

TEST_CASE("pair table is exhaustive on random rounded sets") {
    SplitMix64 rng(901);
    for (int t = 0; t < 40; ++t) {
        const std::int64_t n = rng.range(1, 10);
        std::vector<RoundedLargeItem> rounded;
        for (std::int64_t i = 0; i < n; ++i)
            rounded.push_back({{static_cast<ItemId>(i), 0, rng.range(1, 30)},
                               rng.range(1, 12)});
        const std::int64_t c = rng.range(5, 120);
        const std::int64_t lambda = rng.range(1, 6);
        const std::int64_t cap = rng.range(8, 40);
        const PairTable table = dp_large(rounded, c, lambda, cap);

        // Restrict the brute force to cardinality <= lambda states.
        const auto brute = brute_pairs(rounded, c);
        for (std::int64_t a = 0; a <= cap; ++a) {
            for (std::int64_t l = 0; l <= lambda; ++l) {
                const auto it = brute.find({a, l});
                const std::int64_t expect =
                    it == brute.end() ? PairTable::kWeightUnreachable : it->second;
                CHECK(table.weight_at(a, l) == expect);
            }
        }
        // Stored witnesses reproduce their states.
        for (std::int64_t a = 0; a <= cap; ++a) {
            for (std::int64_t l = 0; l <= lambda; ++l) {
                if (table.weight_at(a, l) == PairTable::kWeightUnreachable) continue;
                const auto& ids = table.items[static_cast<std::size_t>(a * (lambda + 1) + l)];
                std::int64_t sa = 0, sw = 0;
                for (ItemId id : ids) {
                    sa += rounded[id].profit_index;
                    sw += rounded[id].item.weight;
                }
                CHECK(sa == a);
                CHECK(static_cast<std::int64_t>(ids.size()) == l);
                CHECK(sw == table.weight_at(a, l));
            }
        }
    }
}

TEST_CASE("pair table is input-order independent") {
    std::vector<RoundedLargeItem> rounded{
        {{0, 0, 3}, 6}, {{1, 0, 3}, 6}, {{2, 0, 5}, 8}};
    std::vector<RoundedLargeItem> shuffled{rounded[2], rounded[0], rounded[1]};
    const PairTable a = dp_large(rounded, 12, 3, 24);
    const PairTable b = dp_large(shuffled, 12, 3, 24);
    CHECK(a.weight == b.weight);
}

TEST_CASE("empty large set gives the trivial table") {
    const PairTable table = dp_large({}, 10, 2, 8);
    CHECK(table.weight_at(0, 0) == 0);
    std::int64_t reachable = 0;
    for (std::int64_t w : table.weight)
        if (w != PairTable::kWeightUnreachable) ++reachable;
    CHECK(reachable == 1);
    CHECK(table.value_set_size == 1);
}

TEST_CASE("scheme recovers the optimum on the reference instance") {
    const SolveReport rep = fptas_solve(normalize(e1()).instance, make_rat(1, 2));
    CHECK(rep.value == 15);
    CHECK(rep.item_ids == std::vector<ItemId>{0, 2});
}

TEST_CASE("no large items degenerates to the half heuristic on small items") {
    // All profits equal; eps*P^H lands above every profit.
    const Instance inst = make_instance({{4, 3}, {4, 4}, {4, 5}}, 7, 2);
    const SolveReport rep = fptas_solve(inst, make_rat(1, 2));
    const OracleResult opt = solve_exact_enum(normalize(inst).instance);
    CHECK(rep.value >= (opt.opt_value + 1) / 2);
    CHECK(rep.feasible);
}

TEST_CASE("approximation contract holds against the oracle") {
    SplitMix64 rng(902);
    int runs = 0;
    for (int t = 0; t < 60; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 14, 60, t % 2 == 1)).instance;
        if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) continue;
        const std::int64_t opt = solve_exact_enum(inst).opt_value;
        for (const Rat eps : {make_rat(1, 5), make_rat(3, 10), make_rat(1, 2)}) {
            const SolveReport rep = fptas_solve(inst, eps);
            ++runs;
            CHECK(rep.feasible);
            CHECK(evaluate(inst, rep.item_ids).profit_total == rep.value);
            CHECK(Rat(static_cast<long>(rep.value)) >= (Rat(1) - Rat(6) * eps) * opt);
            CHECK(rep.value <= opt);
        }
    }
    CHECK(runs >= 120);
}

TEST_CASE("small-item completions sit within eps*P^H of their optimum") {
    SplitMix64 rng(906);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 12, 60)).instance;
        if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) continue;
        const HalfResult anchor = half_approx(inst);
        const Rat eps = make_rat(1, 3);
        const Partition parts = partition_items(inst, eps, anchor.value);
        if (parts.small.empty()) continue;

        // Random residual capacity and cardinality, as the pair sweep produces.
        const std::int64_t c = rng.range(1, inst.capacity);
        const std::int64_t k = rng.range(1, inst.cardinality_bound);
        const HalfResult fill = half_fill(parts.small, c, k);

        Instance sub;
        sub.items = parts.small;
        sub.capacity = c;
        sub.cardinality_bound = k;
        std::int64_t opt_sub = 0;
        try {
            opt_sub = solve_exact_enum(normalize(sub).instance).opt_value;
        } catch (const InputError&) {
            continue; // nothing packable under the residual capacity
        }
        ++checked;
        CHECK(Rat(static_cast<long>(opt_sub - fill.value)) <= eps * anchor.value);
    }
    CHECK(checked >= 20);
}

TEST_CASE("dominance pruning never changes the value") {
    SplitMix64 rng(903);
    FptasOptions pruned;
    pruned.prune_dominated = true;
    for (int t = 0; t < 25; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 12, 50)).instance;
        if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) continue;
        const Rat eps = make_rat(1, 4);
        CHECK(fptas_solve(inst, eps).value == fptas_solve(inst, eps, pruned).value);
    }
}

TEST_CASE("distinct index count stays within the quadratic bound") {
    SplitMix64 rng(904);
    for (int t = 0; t < 25; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 16, 90)).instance;
        if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) continue;
        const Rat eps = make_rat(1, 4);
        const SolveReport rep = fptas_solve(inst, eps);
        std::int64_t lambda = 0, beta = 0;
        for (const auto& [name, v] : rep.counters) {
            if (name == "lambda") lambda = v;
            if (name == "beta") beta = v;
        }
        const std::int64_t axis = 2 * floor_i64(Rat(lambda) / eps);
        CHECK(beta <= axis * lambda + 1);
    }
}

TEST_CASE("pair dump is a parsable csv") {
    const std::string path = "/tmp/kkp_pairs_test.csv";
    FptasOptions opts;
    opts.dump_pairs_path = path;
    fptas_solve(normalize(e1()).instance, make_rat(1, 2), opts);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "a,l,weight");
    std::string first;
    std::getline(in, first);
    CHECK(first == "0,0,0");
    std::remove(path.c_str());
}

TEST_CASE("scheme is deterministic and thread-count independent") {
    SplitMix64 rng(905);
    for (int t = 0; t < 6; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 16, 80)).instance;
        if (inst.total_weight() <= inst.capacity && inst.n() <= inst.cardinality_bound) continue;
        const Rat eps = make_rat(1, 4);
        setenv("KKP_THREADS", "0", 1);
        const SolveReport serial = fptas_solve(inst, eps);
        setenv("KKP_THREADS", "2", 1);
        const SolveReport parallel = fptas_solve(inst, eps);
        unsetenv("KKP_THREADS");
        CHECK(serial.value == parallel.value);
        CHECK(serial.item_ids == parallel.item_ids);
    }
}
