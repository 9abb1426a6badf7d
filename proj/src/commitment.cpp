#include "vdp/commitment.hpp"

#include <algorithm>
#include <numeric>

namespace vdp {

LinearProgram build_co_lp(const Game& g) {
    const std::size_t n = g.states(), k = g.actions();
    auto var = [n](std::size_t j, std::size_t s) { return j * n + s; };

    LinearProgram lp(k * n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t s = 0; s < n; ++s) lp.objective[var(j, s)] = g.payoff(j);

    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t jp = 0; jp < k; ++jp) {
            if (j == jp) continue;
            RationalVector row(k * n);
            for (std::size_t s = 0; s < n; ++s) row[var(j, s)] = g.utility(j, s) - g.utility(jp, s);
            lp.add_row(std::move(row), Sense::GreaterEqual, Rational());
        }
    for (std::size_t s = 0; s < n; ++s) {
        RationalVector row(k * n);
        for (std::size_t j = 0; j < k; ++j) row[var(j, s)] = 1;
        lp.add_row(std::move(row), Sense::Equal, g.prior(s));
    }
    return lp;
}

namespace {

Outcome outcome_from_weighted(const Game& g, const RationalVector& y) {
    const std::size_t n = g.states(), k = g.actions();
    Outcome o;
    o.alpha.assign(k, RationalVector(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t s = 0; s < n; ++s) o.alpha[j][s] = y[j * n + s] / g.prior(s);
    return o;
}

CommitmentSolution describe(const Game& g, Outcome outcome) {
    CommitmentSolution sol;
    sol.payoff = outcome_payoffs(g, outcome).ex_ante;
    sol.is_deterministic = outcome.is_deterministic();
    sol.ic = check_ic(g, outcome).passed;
    sol.outcome = std::move(outcome);
    return sol;
}

void require_binary(const Game& g, const char* what) {
    if (g.actions() != 2)
        throw UnsupportedGame(std::string(what) + " requires exactly 2 actions, game has " +
                              std::to_string(g.actions()));
}

}  // namespace

CommitmentSolution solve_commitment(const Game& g) {
    LpResult r = lp_solve(build_co_lp(g));
    // Full revelation is always obedient and the objective is bounded by v(K).
    if (!r.optimal()) throw std::logic_error(std::string("commitment LP reported ") + to_string(r.status));
    CommitmentSolution sol = describe(g, outcome_from_weighted(g, r.solution));
    if (sol.payoff != r.value) throw std::logic_error("commitment payoff disagrees with LP value");
    return sol;
}

bool commitment_outcome_is_unique(const Game& g) {
    LinearProgram face = build_co_lp(g);
    const Rational value = lp_solve(face).value;
    face.add_row(face.objective, Sense::Equal, value);
    for (std::size_t v = 0; v < face.variable_count(); ++v) {
        LinearProgram probe = face;
        probe.objective.assign(face.variable_count(), Rational());
        probe.objective[v] = 1;
        const Rational hi = lp_solve(probe).value;
        probe.objective[v] = -1;
        const Rational lo = -lp_solve(probe).value;
        if (hi != lo) return false;
    }
    return true;
}

std::optional<Partition> find_deterministic_commitment(const Game& g, const Rational& commitment_payoff,
                                                       const SearchOptions& opts) {
    return first_partition_with_payoff(g, commitment_payoff, opts);
}

EquilibriumCommitmentVerdict decide_commitment_in_equilibrium(const Game& g, const SearchOptions& opts) {
    EquilibriumCommitmentVerdict verdict;
    verdict.commitment_payoff = solve_commitment(g).payoff;
    verdict.witness = find_deterministic_commitment(g, verdict.commitment_payoff, opts);
    if (verdict.witness) {
        verdict.attainable = true;
        verdict.best_equilibrium = {*verdict.witness, verdict.commitment_payoff};
    } else {
        verdict.best_equilibrium = best_ic_obedient_partition(g, opts);
    }
    verdict.gap = verdict.commitment_payoff - verdict.best_equilibrium.payoff;
    return verdict;
}

BinaryGameView binary_view(const Game& g) {
    require_binary(g, "binary view");
    BinaryGameView view;
    for (std::size_t s = 0; s < g.states(); ++s) view.delta.push_back(g.utility(1, s) - g.utility(0, s));
    RationalVector sorted = view.delta;
    std::sort(sorted.begin(), sorted.end());
    view.ru_holds = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return view;
}

Outcome binary_ic_repair(const Game& g, const Outcome& psi) {
    require_binary(g, "IC repair");
    validate_outcome(g, psi);
    Outcome repaired = psi;
    for (std::size_t s = 0; s < g.states(); ++s)
        if (g.utility(1, s) >= g.utility(0, s)) {
            repaired.alpha[1][s] = 1;
            repaired.alpha[0][s] = 0;
        }
    return repaired;
}

CutoffCommitment binary_cutoff_commitment(const Game& g) {
    BinaryGameView view = binary_view(g);
    if (!view.ru_holds) throw UnsupportedGame("cutoff commitment requires distinct utility differences across states");
    const std::size_t n = g.states();

    CutoffCommitment out;
    Outcome o;
    o.alpha.assign(2, RationalVector(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return view.delta[a] > view.delta[b]; });

    // Pool states into the action-2 recommendation in decreasing delta until the
    // obedience slack for action 2 is exhausted; the marginal state mixes.
    Rational slack;
    std::optional<std::size_t> cutoff;
    Rational weight(1);
    for (std::size_t s : order) {
        Rational contribution = view.delta[s] * g.prior(s);
        if (cutoff) {
            o.alpha[0][s] = 1;
            continue;
        }
        if (contribution.sign() >= 0 || slack + contribution >= Rational()) {
            o.alpha[1][s] = 1;
            slack += contribution;
            continue;
        }
        cutoff = s;
        weight = slack / -contribution;
        o.alpha[1][s] = weight;
        o.alpha[0][s] = Rational(1) - weight;
    }
    if (!cutoff && view.delta[order.back()].sign() < 0) cutoff = order.back();

    out.cutoff_state = cutoff;
    out.cutoff_weight = weight;
    out.solution = describe(g, std::move(o));
    return out;
}

GapBoundCheck commitment_gap_bound_check(const Game& g, const SearchOptions& opts) {
    BinaryGameView view = binary_view(g);
    if (!view.ru_holds) throw UnsupportedGame("gap bound requires distinct utility differences across states");
    GapBoundCheck check;
    check.gap = decide_commitment_in_equilibrium(g, opts).gap;
    check.bound = (g.payoff(1) - g.payoff(0)) * max_of(g.prior());
    check.holds = check.gap <= check.bound;
    return check;
}

}  // namespace vdp
