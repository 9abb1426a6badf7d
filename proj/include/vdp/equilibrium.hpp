#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "vdp/game.hpp"
#include "vdp/partition_search.hpp"

namespace vdp {

constexpr std::size_t kMaxLatticeStates = 16;

/// A verifiable message: a nonempty set of states. It is available in state s
/// iff s is a member.
class Message {
public:
    Message() = default;
    static Message from_mask(std::uint32_t mask);
    static Message from_states(const std::vector<std::size_t>& states);
    static Message singleton(std::size_t state) { return from_mask(std::uint32_t{1} << state); }

    std::uint32_t mask() const { return mask_; }
    bool contains(std::size_t state) const { return (mask_ >> state) & 1u; }
    std::vector<std::size_t> states() const;
    std::string str() const;  // "{1,2}", 1-based

    friend auto operator<=>(const Message&, const Message&) = default;

private:
    std::uint32_t mask_ = 0;
};

struct MessageProb {
    Message message;
    Rational probability;
};

/**
 * Sender strategy, receiver strategy and belief system. The receiver strategy
 * and the beliefs are total: every nonempty message has an entry, including
 * the ones never sent on path.
 */
struct Equilibrium {
    std::vector<std::vector<MessageProb>> sender;   // per state
    std::map<Message, RationalVector> receiver;     // message -> distribution over actions
    std::map<Message, RationalVector> beliefs;      // message -> distribution over states
};

class EquilibriumFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SenderViolation {
    std::size_t state;
    Message message;
    Message better_message;
    Rational gain;
};

struct ReceiverViolation {
    Message message;
    std::size_t action;
    std::size_t better_action;
    Rational gain;
};

struct VerificationReport {
    bool is_equilibrium = false;
    std::vector<SenderViolation> sender_violations;
    std::vector<ReceiverViolation> receiver_violations;
    std::vector<Message> bayes_violations;
    std::vector<Message> belief_support_violations;
    Outcome induced_outcome;
};

struct SkepticalResponse {
    std::size_t action;
    std::vector<std::size_t> support;
    RationalVector belief;  // uniform on support
};

/// Structural checks: verifiable sender support, probability vectors, total maps.
void validate_equilibrium(const Game& g, const Equilibrium& e);

SkepticalResponse skeptical_response(const Game& g, const Message& m);

/// Recommendation equilibrium for an IC and obedient partition; throws
/// AnalysisRefusal naming the failing slack otherwise.
Equilibrium construct_recommendation_equilibrium(const Game& g, const Partition& p);

/// Checks every equilibrium condition exactly over the full message lattice.
VerificationReport verify_equilibrium(const Game& g, const Equilibrium& e);

/// States where the induced outcome mixes but every message the sender uses
/// there gets a pure receiver response. Empty for every genuine equilibrium.
std::vector<std::size_t> mixing_diagnostic(const Game& g, const Equilibrium& e);

/// All deterministic equilibrium outcomes, each cross-checked by building and
/// verifying its recommendation equilibrium.
std::vector<Partition> enumerate_equilibrium_outcomes(const Game& g, const SearchOptions& opts = {});

}  // namespace vdp
