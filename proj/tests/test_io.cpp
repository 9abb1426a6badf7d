#include "doctest.h"

#include "vdp/io.hpp"

using namespace vdp;
using io::json;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

std::string fixture(const char* name) { return std::string(VDP_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("fixture games are detected by format") {
    io::AnyGame e1 = io::parse_game_file(fixture("two_state.game.json"));
    REQUIRE(std::holds_alternative<Game>(e1));
    const Game& g = std::get<Game>(e1);
    CHECK(g.states() == 2);
    CHECK(g.actions() == 2);
    CHECK(g.prior() == RationalVector{r(7, 10), r(3, 10)});

    io::AnyGame gk = io::parse_game_file(fixture("uniform3.game.json"));
    REQUIRE(std::holds_alternative<MeanThresholdGame>(gk));
    CHECK(std::get<MeanThresholdGame>(gk).cutoffs == RationalVector{r(0), r(1, 3), r(2, 3), r(1)});
    CHECK(std::get<MeanThresholdGame>(gk).sender_payoff == RationalVector{r(0), r(1), r(3)});
}

TEST_CASE("bad prior is reported with its kind") {
    try {
        io::parse_game_file(fixture("bad_prior.game.json"));
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationError::Kind::PriorMass);
        CHECK(std::string(e.what()).find("prior") != std::string::npos);
    }
}

TEST_CASE("parse diagnostics name the line or the field") {
    try {
        io::parse_json_text("{\n  \"states\": 2,\n  \"prior\": [\"1/2\" \"1/2\"]\n}", "mem");
        FAIL("expected a ParseError");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).rfind("mem:3:", 0) == 0);
    }
    json j = json::parse(R"({"states": 2, "prior": ["1/2", "x"], "receiver_utility": [], "sender_payoff": []})");
    try {
        io::game_from_json(j);
        FAIL("expected a ParseError");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find("prior[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(io::game_from_json(json::parse(R"({"states": 2})")), io::ParseError);
    CHECK_THROWS_AS(io::parse_game_json(json::parse(R"({"foo": 1})")), io::ParseError);
    CHECK_THROWS_AS(io::parse_game_file(fixture("missing.json")), io::ParseError);
}

TEST_CASE("partitions are 1-based in text") {
    CHECK(io::parse_partition_list("1,2,2").assign == std::vector<std::size_t>{0, 1, 1});
    CHECK_THROWS_AS(io::parse_partition_list("1,0"), io::ParseError);
    CHECK_THROWS_AS(io::parse_partition_list("1,x"), io::ParseError);
    CHECK(io::partition_from_json(io::partition_to_json(Partition{{2, 0}})) == Partition{{2, 0}});
}

TEST_CASE("round trips") {
    Game g = std::get<Game>(io::parse_game_file(fixture("two_state.game.json")));
    CHECK(io::game_from_json(io::game_to_json(g)).spec().prior == g.prior());

    Outcome o = io::outcome_from_json(io::read_json_file(fixture("two_state_optimum.outcome.json")));
    CHECK(o == Outcome{{{r(4, 7), r(0)}, {r(3, 7), r(1)}}});
    CHECK(io::outcome_from_json(json::parse(io::outcome_to_json(o).dump())) == o);

    Equilibrium e = construct_recommendation_equilibrium(g, Partition{{0, 1}});
    json text = json::parse(io::equilibrium_to_json(e).dump());
    Equilibrium back = io::equilibrium_from_json(text);
    CHECK(io::equilibrium_to_json(back) == io::equilibrium_to_json(e));
    CHECK(verify_equilibrium(g, back).is_equilibrium);
    CHECK(text["sender"][1][0][0] == json::array({2}));

    MeanThresholdGame gk = std::get<MeanThresholdGame>(io::parse_game_file(fixture("uniform3.game.json")));
    IntervalOutcome io_out = io::interval_outcome_from_json(io::read_json_file(fixture("uniform3_partition.outcome.json")));
    CHECK(io::interval_outcome_from_json(io::interval_outcome_to_json(io_out)) == io_out);
    CHECK(evaluate_interval_outcome(gk, io_out).ex_ante == r(25, 12));
}

TEST_CASE("duplicate and malformed equilibrium entries") {
    json j = json::parse(R"({"sender": [[[[1], "1"]], [[[2], "1"]]],
                             "receiver": [[[1], ["1","0"]], [[1], ["1","0"]]],
                             "beliefs": []})");
    CHECK_THROWS_AS(io::equilibrium_from_json(j), io::ParseError);
    json k = json::parse(R"({"sender": [[[[0], "1"]]], "receiver": [], "beliefs": []})");
    CHECK_THROWS_AS(io::equilibrium_from_json(k), io::ParseError);
}
