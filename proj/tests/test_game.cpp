#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "vdp/game.hpp"

using namespace vdp;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

GameSpec two_state_spec() { return {{r(7, 10), r(3, 10)}, {{r(1), r(0)}, {r(0), r(1)}}, {r(0), r(1)}}; }

Outcome alpha_star() { return Outcome{{{r(4, 7), r(0)}, {r(3, 7), r(1)}}}; }

ValidationError::Kind kind_of(const GameSpec& spec) {
    try {
        validate_game(spec);
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return ValidationError::Kind::DimensionMismatch;
}

}  // namespace

TEST_CASE("validation names the broken invariant") {
    using K = ValidationError::Kind;
    GameSpec g = two_state_spec();
    CHECK_NOTHROW(validate_game(g));

    GameSpec mass = g;
    mass.prior[0] = r(6, 10);
    CHECK(kind_of(mass) == K::PriorMass);

    GameSpec zero = g;
    zero.prior = {r(1), r(0)};
    CHECK(kind_of(zero) == K::ZeroProbabilityState);

    GameSpec neg = g;
    neg.prior = {r(6, 5), r(-1, 5)};
    CHECK(kind_of(neg) == K::NegativeProbability);

    GameSpec flat = g;
    flat.sender_payoff = {r(1), r(1)};
    CHECK(kind_of(flat) == K::PayoffNotIncreasing);

    GameSpec ragged = g;
    ragged.receiver_utility[1].pop_back();
    CHECK(kind_of(ragged) == K::DimensionMismatch);

    GameSpec one_state{{r(1)}, {{r(0)}, {r(1)}}, {r(0), r(1)}};
    CHECK(kind_of(one_state) == K::TooFewStates);

    GameSpec one_action{{r(1, 2), r(1, 2)}, {{r(0), r(1)}}, {r(0)}};
    CHECK(kind_of(one_action) == K::TooFewActions);
}

TEST_CASE("two-state game slacks") {
    Game g = validate_game(two_state_spec());
    CHECK(best_actions(g, 0) == std::vector<std::size_t>{0});
    CHECK(best_actions(g, 1) == std::vector<std::size_t>{1});
    CHECK(v_lower(g, 0) == r(0));
    CHECK(v_lower(g, 1) == r(1));

    Outcome a = alpha_star();
    CHECK_NOTHROW(validate_outcome(g, a));
    CheckReport ic = check_ic(g, a);
    CHECK(ic.passed);
    CHECK(ic.ic_slack == RationalVector{r(3, 7), r(0)});

    CheckReport ob = check_obedience(g, a);
    CHECK(ob.passed);
    // Pooled message for action 2 sits exactly on the receiver's threshold.
    CHECK(ob.obedience_slack[1][0] == r(0));
    CHECK(ob.obedience_slack[0][1] == r(2, 5));

    Payoffs p = outcome_payoffs(g, a);
    CHECK(p.interim == RationalVector{r(3, 7), r(1)});
    CHECK(p.ex_ante == r(3, 5));
    CHECK_FALSE(a.is_deterministic());
    CHECK_FALSE(a.to_partition().has_value());
}

TEST_CASE("two-state partitions by hand") {
    Game g = validate_game(two_state_spec());
    // (1,1): state 2 loses v(2) = 1, not IC. (2,1): state 2 again. (2,2): posterior 3/10 on state 2, disobeyed.
    struct Row {
        Partition p;
        bool ic, obedient;
        Rational payoff;
    };
    const Row rows[] = {
        {{{0, 0}}, false, true, r(0)},
        {{{0, 1}}, true, true, r(3, 10)},
        {{{1, 0}}, false, false, r(7, 10)},
        {{{1, 1}}, true, false, r(1)},
    };
    for (const auto& row : rows) {
        Outcome o = Outcome::from_partition(row.p, 2);
        CHECK(check_ic(g, o).passed == row.ic);
        CHECK(check_obedience(g, o).passed == row.obedient);
        CHECK(ex_ante_payoff(g, row.p) == row.payoff);
        CHECK(o.to_partition() == row.p);
    }
    CHECK(full_revelation_partition(g) == Partition{{0, 1}});
    CHECK(format_partition(Partition{{0, 1}}) == "(1,2)");
}

TEST_CASE("outcome and partition validation") {
    Game g = validate_game(two_state_spec());
    CHECK_THROWS_AS(validate_outcome(g, Outcome{{{r(1, 2), r(0)}, {r(1, 3), r(1)}}}), ValidationError);
    CHECK_THROWS_AS(validate_outcome(g, Outcome{{{r(1), r(0)}}}), ValidationError);
    CHECK_THROWS_AS(validate_outcome(g, Outcome{{{r(2), r(0)}, {r(-1), r(1)}}}), ValidationError);
    CHECK_THROWS_AS(validate_partition(g, Partition{{0, 2}}), ValidationError);
    CHECK_THROWS_AS(validate_partition(g, Partition{{0}}), ValidationError);
}

TEST_CASE("ties resolve toward the lowest best action") {
    GameSpec spec{{r(1, 2), r(1, 2)}, {{r(1), r(0)}, {r(1), r(1)}, {r(0), r(1)}}, {r(0), r(1), r(2)}};
    Game g = validate_game(spec);
    CHECK(best_actions(g, 0) == std::vector<std::size_t>{0, 1});
    CHECK(lowest_best_action(g, 1) == 1);
    CHECK(v_lower(g, 1) == r(1));
    CHECK(full_revelation_partition(g) == Partition{{0, 1}});
}

TEST_CASE("check_ic and check_obedience agree with the raw definitions") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        GameSpec spec = oracle::random_game(rng, n, k);
        Game g = validate_game(spec);
        for (const auto& a : oracle::all_assignments(n, k)) {
            Outcome o = Outcome::from_partition(Partition{a}, k);
            CHECK(check_ic(g, o).passed == oracle::partition_ic(spec, a));
            CHECK(check_obedience(g, o).passed == oracle::partition_obedient(spec, a));
            CHECK(outcome_payoffs(g, o).ex_ante == oracle::partition_payoff(spec, a));
        }
    }
}
