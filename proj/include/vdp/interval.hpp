#pragma once

#include <optional>
#include <vector>

#include "vdp/game.hpp"

namespace vdp {

/// Uniform prior on [0,1]; the receiver's best action depends only on the
/// posterior mean m, and action j is optimal iff cutoffs[j] <= m <= cutoffs[j+1].
struct MeanThresholdGame {
    RationalVector cutoffs;        // 0 = c_0 <= c_1 <= ... <= c_K = 1
    RationalVector sender_payoff;  // strictly increasing

    std::size_t actions() const { return sender_payoff.size(); }
};

/// Throws ValidationError on malformed cutoffs or payoffs.
void validate_interval_game(const MeanThresholdGame& g);

struct IntervalPiece {
    Rational lo;
    Rational hi;
    RationalVector weights;  // distribution over actions on [lo, hi)

    friend bool operator==(const IntervalPiece&, const IntervalPiece&) = default;
};

/// Piecewise-constant outcome; pieces are half-open and tile [0,1] in order.
struct IntervalOutcome {
    std::vector<IntervalPiece> pieces;

    bool is_deterministic() const;
    friend bool operator==(const IntervalOutcome&, const IntervalOutcome&) = default;
};

void validate_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o);

struct MomentSummary {
    RationalVector mass;          // integral of psi(j|.)
    RationalVector first_moment;  // integral of theta * psi(j|.)
    std::vector<std::optional<Rational>> mean;
};

struct IntervalEvaluation {
    MomentSummary moments;
    bool obedient = false;
    bool ic = false;
    Rational ex_ante;
    /// (piece index, action) pairs where the action falls short of v_lower somewhere on the piece.
    std::vector<std::pair<std::size_t, std::size_t>> ic_failures;
};

IntervalEvaluation evaluate_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o);

/// Lowest action whose complete-information region reaches arbitrarily close
/// below `hi`; the supremum of v_lower over [lo, hi) is this action's payoff.
std::size_t lowest_action_near_right_end(const MeanThresholdGame& g, const Rational& hi);

/// Deterministic outcome with the same per-action mass and first moment.
/// Within each piece the highest weighted action takes a centered interval and
/// each lower action the symmetric pair of flanks around what is already
/// allocated, so every action's share has the piece's midpoint as its mean.
IntervalOutcome purify_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o);

/// Full revelation: each complete-information region [c_{j-1}, c_j) gets action j.
IntervalOutcome interval_full_revelation(const MeanThresholdGame& g);

/**
 * n-state finite game on the cell midpoints (2i+1)/(2n) with uniform prior.
 * Receiver utility is affine in the state, u(j, t) = j*t - (c_1 + ... + c_j)
 * with 0-based j, so expected utilities depend on the posterior mean only and
 * the indifference point between actions j and j+1 is exactly c_{j+1}.
 */
Game discretize_game(const MeanThresholdGame& g, std::size_t n);

}  // namespace vdp
