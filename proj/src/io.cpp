#include "vdp/io.hpp"

#include <fstream>
#include <sstream>

namespace vdp::io {

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + name + "\"");
    return *it;
}

const json& array_field(const json& j, const char* name, const std::string& where) {
    const json& a = field(j, name, where);
    if (!a.is_array()) throw ParseError(where + ": field \"" + name + "\" must be an array");
    return a;
}

RationalVector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    RationalVector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

RationalMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of arrays");
    RationalMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(to_json(r));
    return out;
}

json matrix_to_json(const RationalMatrix& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(vector_to_json(row));
    return out;
}

std::size_t index_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(where + ": expected a positive 1-based index");
    return static_cast<std::size_t>(j.get<long long>() - 1);
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path.string());
}

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
    } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

json game_to_json(const Game& g) {
    return {{"states", g.states()},
            {"prior", vector_to_json(g.prior())},
            {"receiver_utility", matrix_to_json(g.receiver_utility())},
            {"sender_payoff", vector_to_json(g.sender_payoff())}};
}

Game game_from_json(const json& j) {
    GameSpec spec;
    spec.prior = vector_from_json(array_field(j, "prior", "game"), "prior");
    spec.receiver_utility = matrix_from_json(array_field(j, "receiver_utility", "game"), "receiver_utility");
    spec.sender_payoff = vector_from_json(array_field(j, "sender_payoff", "game"), "sender_payoff");
    const json& states = field(j, "states", "game");
    if (!states.is_number_integer() || states.get<long long>() != static_cast<long long>(spec.prior.size()))
        throw ValidationError(ValidationError::Kind::DimensionMismatch,
                              "states field disagrees with prior length " + std::to_string(spec.prior.size()));
    return validate_game(spec);
}

json outcome_to_json(const Outcome& o) { return {{"alpha", matrix_to_json(o.alpha)}}; }

Outcome outcome_from_json(const json& j) {
    return Outcome{matrix_from_json(array_field(j, "alpha", "outcome"), "alpha")};
}

json partition_to_json(const Partition& p) {
    json a = json::array();
    for (std::size_t x : p.assign) a.push_back(x + 1);
    return {{"partition", a}};
}

Partition partition_from_json(const json& j) {
    const json& a = array_field(j, "partition", "partition file");
    Partition p;
    for (std::size_t i = 0; i < a.size(); ++i) p.assign.push_back(index_from_json(a[i], "partition[" + std::to_string(i) + "]"));
    return p;
}

Partition parse_partition_list(const std::string& text) {
    Partition p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            p.assign.push_back(static_cast<std::size_t>(v - 1));
        } catch (const std::exception&) {
            throw ParseError("--partition: '" + item + "' is not a positive action index");
        }
    }
    if (p.assign.empty()) throw ParseError("--partition: empty list");
    return p;
}

json interval_game_to_json(const MeanThresholdGame& g) {
    return {{"cutoffs", vector_to_json(g.cutoffs)}, {"sender_payoff", vector_to_json(g.sender_payoff)}};
}

MeanThresholdGame interval_game_from_json(const json& j) {
    MeanThresholdGame g;
    g.cutoffs = vector_from_json(array_field(j, "cutoffs", "interval game"), "cutoffs");
    g.sender_payoff = vector_from_json(array_field(j, "sender_payoff", "interval game"), "sender_payoff");
    validate_interval_game(g);
    return g;
}

json interval_outcome_to_json(const IntervalOutcome& o) {
    json pieces = json::array();
    for (const auto& p : o.pieces) pieces.push_back(json::array({to_json(p.lo), to_json(p.hi), vector_to_json(p.weights)}));
    return {{"pieces", pieces}};
}

IntervalOutcome interval_outcome_from_json(const json& j) {
    const json& pieces = array_field(j, "pieces", "interval outcome");
    IntervalOutcome o;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string where = "pieces[" + std::to_string(i) + "]";
        const json& p = pieces[i];
        if (!p.is_array() || p.size() != 3) throw ParseError(where + ": expected [lo, hi, weights]");
        o.pieces.push_back({rational_from_json(p[0], where + ".lo"), rational_from_json(p[1], where + ".hi"),
                            vector_from_json(p[2], where + ".weights")});
    }
    return o;
}

json message_to_json(const Message& m) {
    json a = json::array();
    for (std::size_t s : m.states()) a.push_back(s + 1);
    return a;
}

Message message_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": message must be a nonempty list of states");
    std::vector<std::size_t> states;
    for (std::size_t i = 0; i < j.size(); ++i) states.push_back(index_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    try {
        return Message::from_states(states);
    } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

json equilibrium_to_json(const Equilibrium& e) {
    json sender = json::array();
    for (const auto& per_state : e.sender) {
        json row = json::array();
        for (const auto& mp : per_state) row.push_back(json::array({message_to_json(mp.message), to_json(mp.probability)}));
        sender.push_back(row);
    }
    auto table = [](const std::map<Message, RationalVector>& m) {
        json out = json::array();
        for (const auto& [msg, dist] : m) out.push_back(json::array({message_to_json(msg), vector_to_json(dist)}));
        return out;
    };
    return {{"sender", sender}, {"receiver", table(e.receiver)}, {"beliefs", table(e.beliefs)}};
}

Equilibrium equilibrium_from_json(const json& j) {
    Equilibrium e;
    const json& sender = array_field(j, "sender", "equilibrium");
    for (std::size_t s = 0; s < sender.size(); ++s) {
        const std::string where = "sender[" + std::to_string(s) + "]";
        if (!sender[s].is_array()) throw ParseError(where + ": expected a list of [message, probability]");
        std::vector<MessageProb> row;
        for (std::size_t i = 0; i < sender[s].size(); ++i) {
            const json& entry = sender[s][i];
            const std::string at = where + "[" + std::to_string(i) + "]";
            if (!entry.is_array() || entry.size() != 2) throw ParseError(at + ": expected [message, probability]");
            row.push_back({message_from_json(entry[0], at + ".message"), rational_from_json(entry[1], at + ".probability")});
        }
        e.sender.push_back(std::move(row));
    }
    auto table = [&](const char* name, std::map<Message, RationalVector>& out) {
        const json& rows = array_field(j, name, "equilibrium");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string at = std::string(name) + "[" + std::to_string(i) + "]";
            if (!rows[i].is_array() || rows[i].size() != 2) throw ParseError(at + ": expected [message, distribution]");
            Message m = message_from_json(rows[i][0], at + ".message");
            if (!out.emplace(m, vector_from_json(rows[i][1], at + ".distribution")).second)
                throw ParseError(at + ": duplicate message " + m.str());
        }
    };
    table("receiver", e.receiver);
    table("beliefs", e.beliefs);
    return e;
}

json verification_to_json(const VerificationReport& r) {
    json sender = json::array(), receiver = json::array(), bayes = json::array(), support = json::array();
    for (const auto& v : r.sender_violations)
        sender.push_back({{"state", v.state + 1},
                          {"message", message_to_json(v.message)},
                          {"better_message", message_to_json(v.better_message)},
                          {"gain", to_json(v.gain)}});
    for (const auto& v : r.receiver_violations)
        receiver.push_back({{"message", message_to_json(v.message)},
                            {"action", v.action + 1},
                            {"better_action", v.better_action + 1},
                            {"gain", to_json(v.gain)}});
    for (const auto& m : r.bayes_violations) bayes.push_back(message_to_json(m));
    for (const auto& m : r.belief_support_violations) support.push_back(message_to_json(m));
    return {{"is_equilibrium", r.is_equilibrium},
            {"sender_violations", sender},
            {"receiver_violations", receiver},
            {"bayes_violations", bayes},
            {"belief_support_violations", support},
            {"induced_outcome", outcome_to_json(r.induced_outcome)}};
}

json smm_equilibrium_to_json(const SmmEquilibrium& e) {
    json blocks = json::array(), cells = json::array(), pooled = json::array();
    for (const auto& b : e.blocks) blocks.push_back(json::array({to_json(b.lo), to_json(b.hi), b.state + 1}));
    for (const auto& c : e.cells) cells.push_back(json::array({to_json(c.lo), to_json(c.hi), c.state + 1, *c.action + 1}));
    for (std::size_t j = 0; j < e.receiver.size(); ++j) {
        if (!e.receiver[j]) continue;
        json intervals = json::array();
        Rational mass;
        for (const auto& c : e.pooled_message(j)) {
            intervals.push_back(json::array({to_json(c.lo), to_json(c.hi)}));
            mass += c.length();
        }
        pooled.push_back({{"message", j + 1},
                          {"intervals", intervals},
                          {"length", to_json(mass)},
                          {"response", *e.receiver[j] + 1},
                          {"posterior", vector_to_json(e.posteriors[j])}});
    }
    return {{"blocks", blocks}, {"cells", cells}, {"pooled_messages", pooled}, {"target", outcome_to_json(e.target)}};
}

json smm_verification_to_json(const SmmVerificationReport& r) {
    json sender = json::array(), receiver = json::array(), bayes = json::array();
    for (const auto& v : r.sender_violations)
        sender.push_back({{"state", v.state + 1}, {"message", v.message + 1}, {"payoff", to_json(v.payoff)}, {"floor", to_json(v.floor)}});
    for (const auto& v : r.receiver_violations)
        receiver.push_back({{"message", v.message + 1},
                            {"action", v.action + 1},
                            {"better_action", v.better_action + 1},
                            {"gain", to_json(v.gain)}});
    for (std::size_t j : r.bayes_violations) bayes.push_back(j + 1);
    return {{"is_equilibrium", r.is_equilibrium},
            {"structural_errors", r.structural_errors},
            {"sender_violations", sender},
            {"receiver_violations", receiver},
            {"bayes_violations", bayes},
            {"outcome_matches", r.outcome_matches},
            {"induced_outcome", outcome_to_json(r.induced_outcome)},
            {"ex_ante", to_json(r.ex_ante)}};
}

json commitment_to_json(const CommitmentSolution& s) {
    return {{"payoff", to_json(s.payoff)},
            {"outcome", outcome_to_json(s.outcome)},
            {"deterministic", s.is_deterministic},
            {"ic", s.ic}};
}

json verdict_to_json(const EquilibriumCommitmentVerdict& v) {
    json out = {{"attainable", v.attainable},
                {"commitment_payoff", to_json(v.commitment_payoff)},
                {"gap", to_json(v.gap)},
                {"best_equilibrium_payoff", to_json(v.best_equilibrium.payoff)},
                {"best_equilibrium_partition", partition_to_json(v.best_equilibrium.partition)["partition"]},
                {"witness", nullptr}};
    if (v.witness) out["witness"] = partition_to_json(*v.witness)["partition"];
    return out;
}

json check_report_to_json(const CheckReport& ic, const CheckReport& obedience) {
    return {{"ic", ic.passed},
            {"ic_slack", vector_to_json(ic.ic_slack)},
            {"obedient", obedience.passed},
            {"obedience_slack", matrix_to_json(obedience.obedience_slack)}};
}

json interval_evaluation_to_json(const IntervalEvaluation& ev) {
    json means = json::array();
    for (const auto& m : ev.moments.mean) means.push_back(m ? to_json(*m) : json(nullptr));
    json failures = json::array();
    for (const auto& [piece, action] : ev.ic_failures) failures.push_back({{"piece", piece + 1}, {"action", action + 1}});
    return {{"mass", vector_to_json(ev.moments.mass)},
            {"first_moment", vector_to_json(ev.moments.first_moment)},
            {"mean", means},
            {"obedient", ev.obedient},
            {"ic", ev.ic},
            {"ic_failures", failures},
            {"ex_ante", to_json(ev.ex_ante)}};
}

AnyGame parse_game_json(const json& j) {
    if (!j.is_object()) throw ParseError("game file: expected a JSON object");
    if (j.contains("cutoffs")) return interval_game_from_json(j);
    if (j.contains("states")) return game_from_json(j);
    throw ParseError("game file: neither \"states\" nor \"cutoffs\" present");
}

AnyGame parse_game_file(const std::filesystem::path& path) {
    json j = read_json_file(path);
    try {
        return parse_game_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace vdp::io
