#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "vdp/commitment.hpp"

using namespace vdp;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

GameSpec two_state_spec() { return {{r(7, 10), r(3, 10)}, {{r(1), r(0)}, {r(0), r(1)}}, {r(0), r(1)}}; }

/// The commitment problem written directly over psi(j|s), variable s*K + j.
LinearProgram psi_lp(const GameSpec& g) {
    const std::size_t n = g.prior.size(), k = g.sender_payoff.size();
    LinearProgram lp(n * k);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t j = 0; j < k; ++j) lp.objective[s * k + j] = g.prior[s] * g.sender_payoff[j];
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t alt = 0; alt < k; ++alt) {
            if (alt == j) continue;
            RationalVector row(n * k);
            for (std::size_t s = 0; s < n; ++s)
                row[s * k + j] = g.prior[s] * (g.receiver_utility[alt][s] - g.receiver_utility[j][s]);
            lp.add_row(row, Sense::LessEqual, r(0));
        }
    for (std::size_t s = 0; s < n; ++s) {
        RationalVector row(n * k);
        for (std::size_t j = 0; j < k; ++j) row[s * k + j] = 1;
        lp.add_row(row, Sense::Equal, r(1));
    }
    return lp;
}

GameSpec random_binary_ru(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        GameSpec g = oracle::random_game(rng, n, 2);
        std::vector<Rational> d;
        for (std::size_t s = 0; s < n; ++s) d.push_back(g.receiver_utility[1][s] - g.receiver_utility[0][s]);
        std::sort(d.begin(), d.end());
        if (std::adjacent_find(d.begin(), d.end()) == d.end()) return g;
    }
}

}  // namespace

TEST_CASE("two-state commitment") {
    Game g = validate_game(two_state_spec());
    LinearProgram lp = build_co_lp(g);
    CHECK(lp.variable_count() == 4);
    CHECK(lp.row_count() == 4);
    CHECK(std::count(lp.senses.begin(), lp.senses.end(), Sense::Equal) == 2);

    CommitmentSolution sol = solve_commitment(g);
    CHECK(sol.payoff == r(3, 5));
    CHECK(sol.outcome == Outcome{{{r(4, 7), r(0)}, {r(3, 7), r(1)}}});
    CHECK_FALSE(sol.is_deterministic);
    CHECK(sol.ic);
    CHECK(commitment_outcome_is_unique(g));
    CHECK_FALSE(find_deterministic_commitment(g, sol.payoff).has_value());

    EquilibriumCommitmentVerdict v = decide_commitment_in_equilibrium(g);
    CHECK_FALSE(v.attainable);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.gap == r(3, 10));
    CHECK(v.best_equilibrium.partition == Partition{{0, 1}});
}

TEST_CASE("dominant high action pools everything") {
    Game g = validate_game({{r(1, 3), r(2, 3)}, {{r(0), r(-1)}, {r(1), r(2)}}, {r(0), r(5)}});
    CommitmentSolution sol = solve_commitment(g);
    CHECK(sol.payoff == r(5));
    CHECK(sol.is_deterministic);
    CHECK(sol.ic);
    CHECK(find_deterministic_commitment(g, sol.payoff) == Partition{{1, 1}});
    EquilibriumCommitmentVerdict v = decide_commitment_in_equilibrium(g);
    CHECK(v.attainable);
    CHECK(v.gap == r(0));
    CutoffCommitment cc = binary_cutoff_commitment(g);
    CHECK_FALSE(cc.cutoff_state.has_value());
    CHECK(cc.solution.payoff == r(5));
}

TEST_CASE("binary cutoff examples") {
    Game g = validate_game(two_state_spec());
    BinaryGameView view = binary_view(g);
    CHECK(view.delta == RationalVector{r(-1), r(1)});
    CHECK(view.ru_holds);
    CutoffCommitment cc = binary_cutoff_commitment(g);
    CHECK(cc.cutoff_state == std::optional<std::size_t>{0});
    CHECK(cc.cutoff_weight == r(3, 7));
    CHECK(cc.solution.payoff == r(3, 5));

    Game even = validate_game({{r(1, 2), r(1, 2)}, {{r(1), r(0)}, {r(0), r(1)}}, {r(0), r(1)}});
    CutoffCommitment ce = binary_cutoff_commitment(even);
    CHECK(ce.cutoff_state == std::optional<std::size_t>{0});
    CHECK(ce.cutoff_weight == r(1));
    CHECK(ce.solution.payoff == r(1));

    GapBoundCheck gb = commitment_gap_bound_check(g);
    CHECK(gb.gap == r(3, 10));
    CHECK(gb.bound == r(7, 10));
    CHECK(gb.holds);

    Outcome repaired = binary_ic_repair(g, cc.solution.outcome);
    CHECK(repaired == cc.solution.outcome);
}

TEST_CASE("binary preconditions") {
    Game three = validate_game({{r(1, 2), r(1, 2)}, {{r(1), r(0)}, {r(0), r(1)}, {r(0), r(0)}}, {r(0), r(1), r(2)}});
    CHECK_THROWS_AS(binary_cutoff_commitment(three), UnsupportedGame);
    CHECK_THROWS_AS(binary_ic_repair(three, full_revelation_outcome(three)), UnsupportedGame);
    Game tied = validate_game({{r(1, 2), r(1, 2)}, {{r(1), r(2)}, {r(2), r(3)}}, {r(0), r(1)}});
    CHECK_FALSE(binary_view(tied).ru_holds);
    CHECK_THROWS_AS(binary_cutoff_commitment(tied), UnsupportedGame);
}

TEST_CASE("IC repair raises action 2 on its complete-information region") {
    // Obedient but not IC: state 2 gets action 2 only half the time.
    Game g = validate_game({{r(1, 2), r(1, 2)}, {{r(1), r(0)}, {r(0), r(1)}}, {r(0), r(1)}});
    Outcome half{{{r(1), r(1, 2)}, {r(0), r(1, 2)}}};
    REQUIRE(check_obedience(g, half).passed);
    REQUIRE_FALSE(check_ic(g, half).passed);
    Outcome fixed = binary_ic_repair(g, half);
    CHECK(fixed == Outcome{{{r(1), r(0)}, {r(0), r(1)}}});
    CHECK(check_ic(g, fixed).passed);
    CHECK(check_obedience(g, fixed).obedience_slack[1][0] >= check_obedience(g, half).obedience_slack[1][0]);
}

TEST_CASE("commitment value agrees with independent formulations") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        GameSpec spec = oracle::random_game(rng, n, k);
        Game g = validate_game(spec);
        CommitmentSolution sol = solve_commitment(g);

        LinearProgram lp = psi_lp(spec);
        if (n * k <= 6) {
            auto v = oracle::lp_by_vertices(lp);
            REQUIRE(v.has_value());
            CHECK(sol.payoff == *v);
        }
        LpResult alt = lp_solve(lp);
        REQUIRE(alt.optimal());
        CHECK(sol.payoff == alt.value);

        CHECK(check_obedience(g, sol.outcome).passed);
        CHECK(outcome_payoffs(g, sol.outcome).ex_ante == sol.payoff);
        CHECK(sol.ic == check_ic(g, sol.outcome).passed);
        for (const auto& a : oracle::ic_obedient_partitions(spec)) CHECK(oracle::partition_payoff(spec, a) <= sol.payoff);

        // Equilibrium verdict against brute force.
        Rational best = oracle::partition_payoff(spec, oracle::ic_obedient_partitions(spec).front());
        for (const auto& a : oracle::ic_obedient_partitions(spec)) best = std::max(best, oracle::partition_payoff(spec, a));
        EquilibriumCommitmentVerdict v = decide_commitment_in_equilibrium(g);
        CHECK(v.gap == sol.payoff - best);
        CHECK(v.attainable == (best == sol.payoff));
        CHECK(v.attainable == v.witness.has_value());
    }
}

TEST_CASE("binary games: cutoff, repair and gap bound") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 7)(rng);
        Game g = validate_game(random_binary_ru(rng, n));
        CommitmentSolution sol = solve_commitment(g);
        CutoffCommitment cc = binary_cutoff_commitment(g);
        CHECK(cc.solution.payoff == sol.payoff);
        CHECK(check_obedience(g, cc.solution.outcome).passed);

        Outcome fixed = binary_ic_repair(g, sol.outcome);
        CHECK(check_ic(g, fixed).passed);
        CHECK(check_obedience(g, fixed).passed);
        CHECK(outcome_payoffs(g, fixed).ex_ante == sol.payoff);

        GapBoundCheck gb = commitment_gap_bound_check(g);
        CHECK(gb.holds);
        CHECK(gb.gap <= gb.bound);
    }
}
