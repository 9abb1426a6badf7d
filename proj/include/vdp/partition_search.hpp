#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vdp/game.hpp"

namespace vdp {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    /// Maximum number of search-tree nodes visited before BudgetExceeded.
    std::uint64_t node_budget = 10'000'000;
    /// Prune with the exact LP relaxation of the remaining states.
    bool lp_bound = true;
};

struct ScoredPartition {
    Partition partition;
    Rational payoff;
};

/**
 * Depth-first search over deterministic outcomes that are IC and obedient.
 *
 * States are assigned in index order and actions tried in ascending order,
 * so every search below reports hits in lexicographic order of the
 * assignment vector. IC is enforced by restricting each state to actions at
 * or above its lowest complete-information best response; obedience and the
 * payoff target are enforced by exact bounds on the unassigned suffix.
 */
std::optional<Partition> first_partition_with_payoff(const Game& g, const Rational& target,
                                                     const SearchOptions& opts = {});

/// Highest-payoff IC and obedient partition; ties go to the lexicographically first.
ScoredPartition best_ic_obedient_partition(const Game& g, const SearchOptions& opts = {});

/// Every IC and obedient partition, in lexicographic order.
std::vector<Partition> all_ic_obedient_partitions(const Game& g, const SearchOptions& opts = {});

}  // namespace vdp
