#pragma once

#include <optional>
#include <stdexcept>

#include "vdp/game.hpp"
#include "vdp/lp.hpp"
#include "vdp/partition_search.hpp"

namespace vdp {

struct CommitmentSolution {
    Rational payoff;
    Outcome outcome;
    bool is_deterministic = false;
    bool ic = false;
};

struct EquilibriumCommitmentVerdict {
    bool attainable = false;
    std::optional<Partition> witness;
    /// Commitment payoff minus the best payoff of an IC and obedient partition.
    Rational gap;
    Rational commitment_payoff;
    ScoredPartition best_equilibrium;
};

struct BinaryGameView {
    RationalVector delta;  // u(2,s) - u(1,s)
    bool ru_holds = false;
};

struct CutoffCommitment {
    CommitmentSolution solution;
    /// Absent when action 2 is a complete-information best response everywhere.
    std::optional<std::size_t> cutoff_state;
    Rational cutoff_weight;
};

struct GapBoundCheck {
    Rational gap;
    Rational bound;
    bool holds = false;
};

class UnsupportedGame : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * The commitment problem as an LP over y[j][s] = prior(s) * psi(j|s),
 * variable index j * N + s. Rows: one obedience constraint per ordered pair
 * of distinct actions, then one simplex equality per state.
 */
LinearProgram build_co_lp(const Game& g);

CommitmentSolution solve_commitment(const Game& g);

/// True when the optimal face of the commitment LP is a single point.
bool commitment_outcome_is_unique(const Game& g);

/// Lexicographically first IC and obedient partition with payoff exactly
/// `commitment_payoff`. The budget caps search-tree nodes.
std::optional<Partition> find_deterministic_commitment(const Game& g, const Rational& commitment_payoff,
                                                       const SearchOptions& opts = {});

EquilibriumCommitmentVerdict decide_commitment_in_equilibrium(const Game& g, const SearchOptions& opts = {});

BinaryGameView binary_view(const Game& g);

/// Raises psi(2|s) to one on every state where action 2 is a complete-information best response.
Outcome binary_ic_repair(const Game& g, const Outcome& psi);

/// Closed-form commitment outcome for two actions under distinct utility differences.
CutoffCommitment binary_cutoff_commitment(const Game& g);

/// Gap between the commitment payoff and the best equilibrium payoff, against
/// (v(2) - v(1)) * max prior.
GapBoundCheck commitment_gap_bound_check(const Game& g, const SearchOptions& opts = {});

}  // namespace vdp
