#include "vdp/game.hpp"

namespace vdp {

const char* to_string(ValidationError::Kind kind) {
    using K = ValidationError::Kind;
    switch (kind) {
    case K::DimensionMismatch: return "dimension-mismatch";
    case K::TooFewStates: return "too-few-states";
    case K::TooFewActions: return "too-few-actions";
    case K::PriorMass: return "prior-mass";
    case K::ZeroProbabilityState: return "zero-probability-state";
    case K::NegativeProbability: return "negative-probability";
    case K::PayoffNotIncreasing: return "payoff-not-increasing";
    case K::MalformedOutcome: return "malformed-outcome";
    case K::MalformedPartition: return "malformed-partition";
    }
    return "unknown";
}

Game validate_game(const GameSpec& raw) {
    using K = ValidationError::Kind;
    const std::size_t n = raw.prior.size();
    const std::size_t k = raw.sender_payoff.size();
    if (n < 2) throw ValidationError(K::TooFewStates, "game needs at least 2 states, got " + std::to_string(n));
    if (k < 2) throw ValidationError(K::TooFewActions, "game needs at least 2 actions, got " + std::to_string(k));
    if (raw.receiver_utility.size() != k)
        throw ValidationError(K::DimensionMismatch, "receiver_utility has " + std::to_string(raw.receiver_utility.size()) +
                                                        " rows but sender_payoff has " + std::to_string(k) + " actions");
    for (std::size_t j = 0; j < k; ++j)
        if (raw.receiver_utility[j].size() != n)
            throw ValidationError(K::DimensionMismatch, "receiver_utility row " + std::to_string(j + 1) + " has " +
                                                            std::to_string(raw.receiver_utility[j].size()) +
                                                            " entries, expected " + std::to_string(n));
    for (std::size_t s = 0; s < n; ++s) {
        if (raw.prior[s].sign() < 0)
            throw ValidationError(K::NegativeProbability, "prior of state " + std::to_string(s + 1) + " is negative");
        if (raw.prior[s].is_zero())
            throw ValidationError(K::ZeroProbabilityState, "prior of state " + std::to_string(s + 1) + " is zero");
    }
    Rational mass = sum(raw.prior);
    if (mass != Rational(1)) throw ValidationError(K::PriorMass, "prior mass " + mass.str() + " != 1");
    for (std::size_t j = 1; j < k; ++j)
        if (!(raw.sender_payoff[j - 1] < raw.sender_payoff[j]))
            throw ValidationError(K::PayoffNotIncreasing, "sender_payoff not strictly increasing at action " +
                                                              std::to_string(j + 1));
    return Game(raw.prior, raw.receiver_utility, raw.sender_payoff);
}

Outcome Outcome::from_partition(const Partition& p, std::size_t actions) {
    Outcome o;
    o.alpha.assign(actions, RationalVector(p.assign.size()));
    for (std::size_t s = 0; s < p.assign.size(); ++s) o.alpha.at(p.assign[s])[s] = 1;
    return o;
}

bool Outcome::is_deterministic() const { return to_partition().has_value(); }

std::optional<Partition> Outcome::to_partition() const {
    Partition p;
    p.assign.resize(states());
    for (std::size_t s = 0; s < states(); ++s) {
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < actions(); ++j) {
            if (alpha[j][s].is_zero()) continue;
            if (alpha[j][s] != Rational(1) || hit) return std::nullopt;
            hit = j;
        }
        if (!hit) return std::nullopt;
        p.assign[s] = *hit;
    }
    return p;
}

void validate_outcome(const Game& g, const Outcome& o) {
    using K = ValidationError::Kind;
    if (o.actions() != g.actions())
        throw ValidationError(K::DimensionMismatch, "outcome has " + std::to_string(o.actions()) + " action rows, game has " +
                                                        std::to_string(g.actions()));
    for (const auto& row : o.alpha)
        if (row.size() != g.states())
            throw ValidationError(K::DimensionMismatch, "outcome row has " + std::to_string(row.size()) +
                                                            " states, game has " + std::to_string(g.states()));
    for (std::size_t s = 0; s < g.states(); ++s) {
        Rational col;
        for (std::size_t j = 0; j < g.actions(); ++j) {
            if (o.alpha[j][s].sign() < 0 || o.alpha[j][s] > Rational(1))
                throw ValidationError(K::MalformedOutcome, "alpha[" + std::to_string(j + 1) + "][" + std::to_string(s + 1) +
                                                               "] = " + o.alpha[j][s].str() + " outside [0,1]");
            col += o.alpha[j][s];
        }
        if (col != Rational(1))
            throw ValidationError(K::MalformedOutcome,
                                  "outcome column for state " + std::to_string(s + 1) + " sums to " + col.str());
    }
}

void validate_partition(const Game& g, const Partition& p) {
    using K = ValidationError::Kind;
    if (p.assign.size() != g.states())
        throw ValidationError(K::DimensionMismatch, "partition covers " + std::to_string(p.assign.size()) +
                                                        " states, game has " + std::to_string(g.states()));
    for (std::size_t a : p.assign)
        if (a >= g.actions())
            throw ValidationError(K::MalformedPartition, "partition uses action " + std::to_string(a + 1) +
                                                             " beyond " + std::to_string(g.actions()));
}

std::vector<std::size_t> best_actions(const Game& g, std::size_t state) {
    Rational best = g.utility(0, state);
    for (std::size_t j = 1; j < g.actions(); ++j)
        if (g.utility(j, state) > best) best = g.utility(j, state);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < g.actions(); ++j)
        if (g.utility(j, state) == best) out.push_back(j);
    return out;
}

std::size_t lowest_best_action(const Game& g, std::size_t state) { return best_actions(g, state).front(); }

Rational v_lower(const Game& g, std::size_t state) {
    // v is strictly increasing, so the minimum over best responses sits at the lowest one.
    return g.payoff(lowest_best_action(g, state));
}

Payoffs outcome_payoffs(const Game& g, const Outcome& o) {
    validate_outcome(g, o);
    Payoffs p;
    p.interim.assign(g.states(), Rational());
    for (std::size_t s = 0; s < g.states(); ++s) {
        for (std::size_t j = 0; j < g.actions(); ++j) p.interim[s] += g.payoff(j) * o.alpha[j][s];
        p.ex_ante += g.prior(s) * p.interim[s];
    }
    return p;
}

Rational ex_ante_payoff(const Game& g, const Partition& p) {
    Rational total;
    for (std::size_t s = 0; s < g.states(); ++s) total += g.prior(s) * g.payoff(p.assign[s]);
    return total;
}

CheckReport check_ic(const Game& g, const Outcome& o) {
    CheckReport report;
    Payoffs pay = outcome_payoffs(g, o);
    report.ic_slack.reserve(g.states());
    for (std::size_t s = 0; s < g.states(); ++s) {
        report.ic_slack.push_back(pay.interim[s] - v_lower(g, s));
        if (report.ic_slack.back().sign() < 0) report.passed = false;
    }
    return report;
}

CheckReport check_obedience(const Game& g, const Outcome& o) {
    validate_outcome(g, o);
    CheckReport report;
    const std::size_t k = g.actions();
    report.obedience_slack.assign(k, RationalVector(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t jp = 0; jp < k; ++jp) {
            if (jp == j) continue;
            Rational slack;
            for (std::size_t s = 0; s < g.states(); ++s) {
                if (o.alpha[j][s].is_zero()) continue;
                slack += (g.utility(j, s) - g.utility(jp, s)) * o.alpha[j][s] * g.prior(s);
            }
            if (slack.sign() < 0) report.passed = false;
            report.obedience_slack[j][jp] = std::move(slack);
        }
    return report;
}

bool is_ic_and_obedient(const Game& g, const Outcome& o) {
    return check_ic(g, o).passed && check_obedience(g, o).passed;
}

Partition full_revelation_partition(const Game& g) {
    Partition p;
    p.assign.reserve(g.states());
    for (std::size_t s = 0; s < g.states(); ++s) p.assign.push_back(lowest_best_action(g, s));
    return p;
}

Outcome full_revelation_outcome(const Game& g) {
    return Outcome::from_partition(full_revelation_partition(g), g.actions());
}

std::string format_partition(const Partition& p) {
    std::string out = "(";
    for (std::size_t s = 0; s < p.assign.size(); ++s) {
        if (s) out += ",";
        out += std::to_string(p.assign[s] + 1);
    }
    return out + ")";
}

}  // namespace vdp
