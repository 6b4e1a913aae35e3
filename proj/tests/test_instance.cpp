#include <doctest.h>

#include <algorithm>

#include "kkp/instance.hpp"
#include "support.hpp"

using namespace kkp;
using test::e1;
using test::make_instance;

TEST_CASE("normalize rejects instances with nothing packable") {
    const Instance raw = make_instance({{5, 9}}, 6, 1);
    CHECK_THROWS_WITH_AS(normalize(raw), "no packable items", InputError);
}

TEST_CASE("normalize keeps an already-clean instance untouched") {
    const Normalized norm = normalize(e1());
    CHECK(norm.log.removed.empty());
    CHECK_FALSE(norm.log.trivially_solvable);
    CHECK(norm.instance.n() == 4);
    CHECK(norm.instance.capacity == 6);
    CHECK(norm.instance.cardinality_bound == 2);
}

TEST_CASE("normalize flags instances solved by taking everything") {
    const Normalized norm = normalize(make_instance({{10, 4}, {7, 3}}, 20, 2));
    CHECK(norm.log.trivially_solvable);
    const Solution all = take_all(norm.instance);
    CHECK(all.profit_total == 17);
    CHECK(all.feasible);
}

TEST_CASE("normalize drops oversized items and logs their ids") {
    const Instance raw = make_instance({{10, 4}, {9, 99}, {5, 2}, {2, 50}}, 6, 3);
    const Normalized norm = normalize(raw);
    CHECK(norm.log.removed == std::vector<ItemId>{1, 3});
    for (const Item& it : norm.instance.items) CHECK(it.weight <= norm.instance.capacity);
    CHECK(norm.instance.cardinality_bound == 2); // clamped to surviving n
    CHECK(norm.log.k_clamped);
}

TEST_CASE("normalize is idempotent on random instances") {
    SplitMix64 rng(401);
    for (int t = 0; t < 50; ++t) {
        const Instance raw = test::random_instance(rng);
        const Normalized once = normalize(raw);
        const Normalized twice = normalize(once.instance);
        CHECK(twice.log.removed.empty());
        CHECK(twice.instance.n() == once.instance.n());
        CHECK(twice.instance.capacity == once.instance.capacity);
        CHECK(twice.instance.cardinality_bound == once.instance.cardinality_bound);
        for (std::size_t i = 0; i < once.instance.items.size(); ++i)
            CHECK(twice.instance.items[i].id == once.instance.items[i].id);
    }
}

TEST_CASE("evaluate computes exact totals and feasibility") {
    const Instance inst = e1();
    const std::vector<ItemId> ac{0, 2};
    const Solution s1 = evaluate(inst, ac);
    CHECK(s1.profit_total == 15);
    CHECK(s1.weight_total == 6);
    CHECK(s1.feasible);

    const std::vector<ItemId> ab{0, 1};
    const Solution s2 = evaluate(inst, ab);
    CHECK(s2.profit_total == 17);
    CHECK(s2.weight_total == 7);
    CHECK_FALSE(s2.feasible);

    const Solution empty = evaluate(inst, std::vector<ItemId>{});
    CHECK(empty.profit_total == 0);
    CHECK(empty.weight_total == 0);
    CHECK(empty.feasible);
}

TEST_CASE("evaluate rejects unknown and duplicate ids by name") {
    const Instance inst = e1();
    const std::vector<ItemId> bad{7};
    CHECK_THROWS_WITH_AS(evaluate(inst, bad), "unknown item id 7", InputError);
    const std::vector<ItemId> dup{1, 1};
    CHECK_THROWS_WITH_AS(evaluate(inst, dup), "duplicate item id 1", InputError);
}

TEST_CASE("evaluate totals match an independent reversed summation") {
    SplitMix64 rng(402);
    for (int t = 0; t < 30; ++t) {
        const Instance inst = normalize(test::random_instance(rng)).instance;
        std::vector<ItemId> ids;
        for (const Item& it : inst.items)
            if (rng.below(2)) ids.push_back(it.id);
        const Solution sol = evaluate(inst, ids);
        std::int64_t p = 0, w = 0;
        for (auto it = inst.items.rbegin(); it != inst.items.rend(); ++it) {
            if (std::find(ids.begin(), ids.end(), it->id) != ids.end()) {
                p += it->profit;
                w += it->weight;
            }
        }
        CHECK(sol.profit_total == p);
        CHECK(sol.weight_total == w);
    }
}

TEST_CASE("text and json round trips are byte-deterministic") {
    const Instance inst = e1();
    const std::string text = write_instance_text(inst);
    CHECK(text == "4 6 2\n10 4\n7 3\n5 2\n3 1\n");
    CHECK(text == write_instance_text(inst));
    const Instance back = parse_instance(text);
    CHECK(write_instance_text(back) == text);

    const std::string json = write_instance_json(inst);
    CHECK(json == write_instance_json(inst));
    const Instance back_json = parse_instance(json);
    CHECK(back_json.capacity == inst.capacity);
    CHECK(back_json.cardinality_bound == inst.cardinality_bound);
    REQUIRE(back_json.n() == inst.n());
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        CHECK(back_json.items[i].profit == inst.items[i].profit);
        CHECK(back_json.items[i].weight == inst.items[i].weight);
    }
    CHECK(write_instance_json(back_json) == json);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_instance("oops"), InputError);
    CHECK_THROWS_AS(parse_instance("2 6 1\n10 4\n"), InputError);    // missing item line
    CHECK_THROWS_AS(parse_instance("1 6 1\n0 4\n"), InputError);     // zero profit
    CHECK_THROWS_AS(parse_instance("1 6 0\n10 4\n"), InputError);    // zero k
    CHECK_THROWS_AS(parse_instance("{\"capacity\":3}"), InputError); // incomplete json
    CHECK_THROWS_AS(parse_instance("   "), InputError);
}
