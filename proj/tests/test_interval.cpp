#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "vdp/commitment.hpp"
#include "vdp/interval.hpp"

using namespace vdp;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

MeanThresholdGame uniform3() { return {{r(0), r(1, 3), r(2, 3), r(1)}, {r(0), r(1), r(3)}}; }

RationalVector pure(std::size_t j, std::size_t k = 3) {
    RationalVector w(k);
    w[j] = 1;
    return w;
}

IntervalOutcome uniform3_partition() {
    return {{{r(0), r(8, 48), pure(0)}, {r(8, 48), r(11, 48), pure(2)}, {r(11, 48), r(21, 48), pure(1)}, {r(21, 48), r(1), pure(2)}}};
}

}  // namespace

TEST_CASE("three-action uniform partition") {
    IntervalEvaluation ev = evaluate_interval_outcome(uniform3(), uniform3_partition());
    CHECK(ev.obedient);
    CHECK(ev.ic);
    CHECK(ev.moments.mass == RationalVector{r(1, 6), r(5, 24), r(5, 8)});
    CHECK(ev.moments.mean[1] == r(1, 3));
    CHECK(ev.moments.mean[2] == r(2, 3));
    CHECK(ev.moments.mean[0] == r(1, 12));
    CHECK(ev.ex_ante == r(25, 12));
    CHECK(uniform3_partition().is_deterministic());
}

TEST_CASE("full revelation and IC failures") {
    IntervalOutcome fr = interval_full_revelation(uniform3());
    REQUIRE(fr.pieces.size() == 3);
    IntervalEvaluation ev = evaluate_interval_outcome(uniform3(), fr);
    CHECK(ev.obedient);
    CHECK(ev.ic);
    CHECK(ev.ex_ante == r(4, 3));

    // Action 1 on [1/2, 1) pays less than revealing the state there.
    IntervalOutcome low{{{r(0), r(1, 2), pure(2)}, {r(1, 2), r(1), pure(0)}}};
    IntervalEvaluation bad = evaluate_interval_outcome(uniform3(), low);
    CHECK_FALSE(bad.ic);
    CHECK(bad.ic_failures == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});

    // Right end exactly at a cutoff: action 1 up to 1/3 is still IC.
    IntervalOutcome edge{{{r(0), r(1, 3), pure(0)}, {r(1, 3), r(1), pure(2)}}};
    CHECK(evaluate_interval_outcome(uniform3(), edge).ic);
    CHECK(lowest_action_near_right_end(uniform3(), r(1, 3)) == 0);
    CHECK(lowest_action_near_right_end(uniform3(), r(2, 5)) == 1);
}

TEST_CASE("validation of interval data") {
    MeanThresholdGame g = uniform3();
    g.cutoffs[1] = r(3, 4);
    CHECK_THROWS_AS(validate_interval_game(g), ValidationError);
    MeanThresholdGame short_cut{{r(0), r(1)}, {r(0), r(1), r(2)}};
    CHECK_THROWS_AS(validate_interval_game(short_cut), ValidationError);
    IntervalOutcome hole{{{r(0), r(1, 2), pure(0)}, {r(2, 3), r(1), pure(2)}}};
    CHECK_THROWS_AS(validate_interval_outcome(uniform3(), hole), ValidationError);
    IntervalOutcome heavy{{{r(0), r(1), {r(1), r(1), r(0)}}}};
    CHECK_THROWS_AS(validate_interval_outcome(uniform3(), heavy), ValidationError);
}

TEST_CASE("purification of one mixed piece") {
    IntervalOutcome mixed{{{r(0), r(1, 2), {r(1, 2), r(1, 2), r(0)}}, {r(1, 2), r(1), pure(2)}}};
    IntervalOutcome pure_out = purify_interval_outcome(uniform3(), mixed);
    IntervalOutcome expected{{{r(0), r(1, 8), pure(0)},
                              {r(1, 8), r(3, 8), pure(1)},
                              {r(3, 8), r(1, 2), pure(0)},
                              {r(1, 2), r(1), pure(2)}}};
    CHECK(pure_out == expected);
    IntervalEvaluation a = evaluate_interval_outcome(uniform3(), mixed);
    IntervalEvaluation b = evaluate_interval_outcome(uniform3(), pure_out);
    CHECK(a.moments.mass == b.moments.mass);
    CHECK(a.moments.first_moment == b.moments.first_moment);
    CHECK(a.ex_ante == b.ex_ante);
    CHECK(purify_interval_outcome(uniform3(), uniform3_partition()) == uniform3_partition());
}

TEST_CASE("purification preserves moments on random outcomes") {
    std::mt19937_64 rng(31);
    int obedient = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        auto [g, o] = oracle::random_obedient_instance(rng, k, 8);
        IntervalEvaluation before = evaluate_interval_outcome(g, o);
        CHECK(before.obedient);
        IntervalOutcome p = purify_interval_outcome(g, o);
        CHECK(p.is_deterministic());
        IntervalEvaluation after = evaluate_interval_outcome(g, p);
        CHECK(after.moments.mass == before.moments.mass);
        CHECK(after.moments.first_moment == before.moments.first_moment);
        CHECK(after.obedient);
        CHECK(after.ex_ante == before.ex_ante);
        obedient += before.obedient;
    }
    CHECK(obedient == 150);
}

TEST_CASE("discretized game") {
    Game g3 = discretize_game(uniform3(), 3);
    CHECK(g3.states() == 3);
    CHECK(g3.prior() == RationalVector{r(1, 3), r(1, 3), r(1, 3)});
    CHECK(lowest_best_action(g3, 0) == 0);
    CHECK(lowest_best_action(g3, 1) == 1);
    CHECK(lowest_best_action(g3, 2) == 2);
    CHECK(g3.utility(1, 1) == r(1, 6));
    CHECK(g3.utility(2, 2) == r(2, 3));

    // The three-action uniform partition restricted to the 48-point grid is obedient, IC and pays 25/12.
    Game g48 = discretize_game(uniform3(), 48);
    Partition p;
    for (std::size_t i = 0; i < 48; ++i) p.assign.push_back(i < 8 ? 0 : (i < 11 ? 2 : (i < 21 ? 1 : 2)));
    Outcome o = Outcome::from_partition(p, 3);
    CHECK(check_obedience(g48, o).passed);
    CHECK(check_ic(g48, o).passed);
    CHECK(ex_ante_payoff(g48, p) == r(25, 12));
    CHECK_THROWS_AS(discretize_game(uniform3(), 1), ValidationError);
}
