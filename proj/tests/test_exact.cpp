#include <doctest.h>

#include <cstdlib>

#include "kkp/exact.hpp"
#include "support.hpp"

using namespace kkp;
using test::e1;
using test::make_instance;

TEST_CASE("enumeration solves the reference instance") {
    const OracleResult r = solve_exact_enum(normalize(e1()).instance);
    CHECK(r.opt_value == 15);
    CHECK(r.witness.selected == std::vector<ItemId>{0, 2});
}

TEST_CASE("enumeration handles a single item") {
    const OracleResult r = solve_exact_enum(make_instance({{7, 2}}, 5, 1));
    CHECK(r.opt_value == 7);
}

TEST_CASE("k=1 yields the best single profit") {
    SplitMix64 rng(601);
    for (int t = 0; t < 40; ++t) {
        Instance inst = normalize(test::random_instance(rng, 12, 50)).instance;
        inst.cardinality_bound = 1;
        const OracleResult r = solve_exact_enum(inst);
        std::int64_t best = 0;
        for (const Item& it : inst.items) best = std::max(best, it.profit);
        CHECK(r.opt_value == best);
    }
}

TEST_CASE("enumeration refuses oversized instances") {
    Instance big;
    big.capacity = 100;
    big.cardinality_bound = 5;
    for (int i = 0; i < 26; ++i) big.items.push_back({static_cast<ItemId>(i), 1, 1});
    CHECK_THROWS_WITH_AS(solve_exact_enum(big),
                         "subset enumeration refuses n > 25; use the dp oracle", InputError);
}

TEST_CASE("dp solves the reference instance") {
    const OracleResult r = solve_exact_dp(normalize(e1()).instance);
    CHECK(r.opt_value == 15);
    CHECK(evaluate(e1(), r.witness.selected).profit_total == 15);
}

TEST_CASE("dp with unit weights takes the k largest profits") {
    SplitMix64 rng(602);
    for (int t = 0; t < 30; ++t) {
        const std::int64_t n = rng.range(3, 14);
        Instance inst;
        for (std::int64_t i = 0; i < n; ++i)
            inst.items.push_back({static_cast<ItemId>(i), rng.range(1, 50), 1});
        inst.capacity = n;
        inst.cardinality_bound = rng.range(1, n);
        const OracleResult r = solve_exact_dp(inst);
        std::vector<std::int64_t> profits;
        for (const Item& it : inst.items) profits.push_back(it.profit);
        std::sort(profits.rbegin(), profits.rend());
        std::int64_t expect = 0;
        for (std::int64_t i = 0; i < inst.cardinality_bound; ++i)
            expect += profits[static_cast<std::size_t>(i)];
        CHECK(r.opt_value == expect);
    }
}

TEST_CASE("dp refuses when the table exceeds the budget") {
    Instance inst = make_instance({{5, 3}, {4, 2}}, 1000, 2);
    CHECK_THROWS_AS(solve_exact_dp(inst, 100), InputError);
    try {
        solve_exact_dp(inst, 100);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("3003") != std::string::npos); // (c+1)*(k+1)
    }
}

TEST_CASE("the two oracles agree on value") {
    SplitMix64 rng(603);
    for (int t = 0; t < 200; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 14, 40, t % 3 == 0)).instance;
        const OracleResult a = solve_exact_enum(inst);
        const OracleResult b = solve_exact_dp(inst);
        CHECK(a.opt_value == b.opt_value);
        CHECK(evaluate(inst, a.witness.selected).profit_total == a.opt_value);
        CHECK(evaluate(inst, b.witness.selected).profit_total == b.opt_value);
        CHECK(a.witness.feasible);
        CHECK(b.witness.feasible);
    }
}

TEST_CASE("enumeration gives identical results serial and parallel") {
    SplitMix64 rng(604);
    for (int t = 0; t < 10; ++t) {
        const Instance inst = normalize(test::random_instance(rng, 16, 60)).instance;
        setenv("KKP_THREADS", "0", 1);
        const OracleResult serial = solve_exact_enum(inst);
        setenv("KKP_THREADS", "2", 1);
        const OracleResult parallel = solve_exact_enum(inst);
        unsetenv("KKP_THREADS");
        CHECK(serial.opt_value == parallel.opt_value);
        CHECK(serial.witness.selected == parallel.witness.selected);
    }
}
