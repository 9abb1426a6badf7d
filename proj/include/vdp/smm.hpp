#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vdp/game.hpp"

namespace vdp {

/// A labelled interval of [0,1]. Intervals are half-open [lo, hi) except the
/// one ending at 1, which is closed.
struct LabelInterval {
    Rational lo;
    Rational hi;
    std::size_t state = 0;
    std::optional<std::size_t> action;

    Rational length() const { return hi - lo; }
    friend bool operator==(const LabelInterval&, const LabelInterval&) = default;
};

/**
 * Pure-strategy equilibrium of the game where the sender also sees a
 * payoff-irrelevant label. Label block X^s (length prior(s)) is cut into cells
 * X^s_j of length prior(s) * alpha(j|s); the pooled message W_j is the union
 * of the cells carrying action j, and the receiver answers W_j with
 * receiver[j]. Messages outside {W_j} get the skeptical response.
 */
struct SmmEquilibrium {
    std::vector<LabelInterval> blocks;
    std::vector<LabelInterval> cells;
    std::vector<std::optional<std::size_t>> receiver;  // per pooled message; empty W_j -> nullopt
    RationalMatrix posteriors;                          // [j][s] = q(s | W_j)
    Outcome target;

    std::vector<LabelInterval> pooled_message(std::size_t action) const;
};

struct SmmSenderViolation {
    std::size_t state;
    std::size_t message;  // pooled message index
    Rational payoff;
    Rational floor;       // v_lower(state), reachable by revealing the label block
};

struct SmmReceiverViolation {
    std::size_t message;
    std::size_t action;
    std::size_t better_action;
    Rational gain;
};

struct SmmVerificationReport {
    bool is_equilibrium = false;
    std::vector<std::string> structural_errors;
    std::vector<SmmSenderViolation> sender_violations;
    std::vector<SmmReceiverViolation> receiver_violations;
    std::vector<std::size_t> bayes_violations;
    bool outcome_matches = false;
    Outcome induced_outcome;
    Rational ex_ante;
};

/// Consecutive blocks [t_{s-1}, t_s) with t_s the cumulative prior.
std::vector<LabelInterval> build_label_partition(const RationalVector& prior);

/// Throws AnalysisRefusal unless `target` is IC and obedient.
SmmEquilibrium construct_smm_equilibrium(const Game& g, const Outcome& target);

SmmVerificationReport verify_smm_equilibrium(const Game& g, const SmmEquilibrium& e);

/// Skeptical action for an off-path message given as a union of half-open
/// label intervals: the lowest action that is a complete-information best
/// response in some state whose block the message meets.
std::size_t smm_skeptical_action(const Game& g, const SmmEquilibrium& e, const std::vector<LabelInterval>& message);

}  // namespace vdp
