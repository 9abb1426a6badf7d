#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "vdp/partition_search.hpp"

using namespace vdp;

TEST_CASE("search matches brute force on random games") {
    std::mt19937_64 rng(99);
    int with_hits = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        GameSpec spec = oracle::random_game(rng, n, k);
        Game g = validate_game(spec);

        auto expected = oracle::ic_obedient_partitions(spec);
        REQUIRE_FALSE(expected.empty());  // full revelation always qualifies
        std::vector<std::vector<std::size_t>> got;
        for (auto& p : all_ic_obedient_partitions(g)) got.push_back(p.assign);
        CHECK(got == expected);

        Rational best = oracle::partition_payoff(spec, expected.front());
        std::vector<std::size_t> best_a = expected.front();
        for (const auto& a : expected)
            if (oracle::partition_payoff(spec, a) > best) {
                best = oracle::partition_payoff(spec, a);
                best_a = a;
            }
        for (bool lp : {true, false}) {
            SearchOptions opts;
            opts.lp_bound = lp;
            ScoredPartition sp = best_ic_obedient_partition(g, opts);
            CHECK(sp.payoff == best);
            CHECK(sp.partition.assign == best_a);
        }

        // Targets: a payoff that is hit, and one that is not.
        const auto& pick = expected[std::uniform_int_distribution<std::size_t>(0, expected.size() - 1)(rng)];
        const Rational target = oracle::partition_payoff(spec, pick);
        std::optional<std::vector<std::size_t>> first;
        for (const auto& a : expected)
            if (oracle::partition_payoff(spec, a) == target) {
                first = a;
                break;
            }
        auto hit = first_partition_with_payoff(g, target);
        REQUIRE(hit.has_value());
        CHECK(hit->assign == *first);
        CHECK_FALSE(first_partition_with_payoff(g, best + Rational(1, 1000)).has_value());
        if (expected.size() > 1) ++with_hits;
    }
    CHECK(with_hits > 50);
}

TEST_CASE("node budget is enforced") {
    std::mt19937_64 rng(5);
    Game g = validate_game(oracle::random_game(rng, 8, 3));
    SearchOptions tiny;
    tiny.node_budget = 3;
    CHECK_THROWS_AS(all_ic_obedient_partitions(g, tiny), BudgetExceeded);
}
