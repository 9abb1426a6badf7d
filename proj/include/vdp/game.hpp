#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdp/rational.hpp"

namespace vdp {

/// Unvalidated persuasion-game data as read from a file or built by hand.
/// receiver_utility[j][s] is the receiver's utility of action j in state s.
/// States and actions are 0-based in the C++ and Python APIs.
struct GameSpec {
    RationalVector prior;
    RationalMatrix receiver_utility;
    RationalVector sender_payoff;
};

class ValidationError : public std::invalid_argument {
public:
    enum class Kind {
        DimensionMismatch,
        TooFewStates,
        TooFewActions,
        PriorMass,
        ZeroProbabilityState,
        NegativeProbability,
        PayoffNotIncreasing,
        MalformedOutcome,
        MalformedPartition,
    };

    ValidationError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(ValidationError::Kind kind);

/// A constructor declined its input because a required property fails
/// (for example a non-IC outcome handed to an equilibrium builder).
class AnalysisRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A validated finite persuasion game: full-support prior over N >= 2 states,
 * K >= 2 receiver actions and a strictly increasing sender payoff.
 * Immutable; obtain one through validate_game().
 */
class Game {
public:
    std::size_t states() const { return prior_.size(); }
    std::size_t actions() const { return payoff_.size(); }

    const RationalVector& prior() const { return prior_; }
    const Rational& prior(std::size_t state) const { return prior_[state]; }
    const RationalMatrix& receiver_utility() const { return utility_; }
    const Rational& utility(std::size_t action, std::size_t state) const { return utility_[action][state]; }
    const RationalVector& sender_payoff() const { return payoff_; }
    const Rational& payoff(std::size_t action) const { return payoff_[action]; }

    GameSpec spec() const { return {prior_, utility_, payoff_}; }

private:
    friend Game validate_game(const GameSpec& raw);
    Game(RationalVector prior, RationalMatrix utility, RationalVector payoff)
        : prior_(std::move(prior)), utility_(std::move(utility)), payoff_(std::move(payoff)) {}

    RationalVector prior_;
    RationalMatrix utility_;
    RationalVector payoff_;
};

/// Throws ValidationError naming the first violated invariant.
Game validate_game(const GameSpec& raw);

/// Deterministic outcome: state s is mapped to action assign[s].
struct Partition {
    std::vector<std::size_t> assign;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// alpha[j][s] is the probability that action j is taken in state s.
struct Outcome {
    RationalMatrix alpha;

    static Outcome from_partition(const Partition& p, std::size_t actions);

    std::size_t actions() const { return alpha.size(); }
    std::size_t states() const { return alpha.empty() ? 0 : alpha.front().size(); }

    bool is_deterministic() const;
    /// Present iff the outcome is deterministic.
    std::optional<Partition> to_partition() const;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Throws ValidationError unless every column of `o` is a probability vector
/// and the dimensions agree with `g`.
void validate_outcome(const Game& g, const Outcome& o);
void validate_partition(const Game& g, const Partition& p);

struct CheckReport {
    bool passed = true;
    RationalVector ic_slack;          // v_alpha(s) - v_lower(s), filled by check_ic
    RationalMatrix obedience_slack;   // [j][j'], filled by check_obedience
};

struct Payoffs {
    RationalVector interim;
    Rational ex_ante;
};

/// Receiver best responses under complete information about `state`; ascending.
std::vector<std::size_t> best_actions(const Game& g, std::size_t state);
std::size_t lowest_best_action(const Game& g, std::size_t state);
/// Sender payoff from full revelation of `state` against the worst best response.
Rational v_lower(const Game& g, std::size_t state);

Payoffs outcome_payoffs(const Game& g, const Outcome& o);
Rational ex_ante_payoff(const Game& g, const Partition& p);

CheckReport check_ic(const Game& g, const Outcome& o);
CheckReport check_obedience(const Game& g, const Outcome& o);
bool is_ic_and_obedient(const Game& g, const Outcome& o);

/// Full revelation with ties broken toward the lowest action.
Partition full_revelation_partition(const Game& g);
Outcome full_revelation_outcome(const Game& g);

std::string format_partition(const Partition& p);

}  // namespace vdp
