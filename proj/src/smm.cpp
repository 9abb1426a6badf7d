#include "vdp/smm.hpp"

#include <algorithm>

namespace vdp {

std::vector<LabelInterval> SmmEquilibrium::pooled_message(std::size_t action) const {
    std::vector<LabelInterval> out;
    for (const auto& c : cells)
        if (c.action == action) out.push_back(c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return out;
}

std::vector<LabelInterval> build_label_partition(const RationalVector& prior) {
    std::vector<LabelInterval> blocks;
    Rational cursor;
    for (std::size_t s = 0; s < prior.size(); ++s) {
        Rational next = cursor + prior[s];
        blocks.push_back({cursor, next, s, std::nullopt});
        cursor = std::move(next);
    }
    return blocks;
}

namespace {

RationalMatrix cell_masses(const Game& g, const SmmEquilibrium& e) {
    RationalMatrix mass(g.actions(), RationalVector(g.states()));
    for (const auto& c : e.cells) mass[*c.action][c.state] += c.length();
    return mass;
}

RationalMatrix posteriors_from(const RationalMatrix& mass) {
    RationalMatrix q(mass.size(), RationalVector(mass.empty() ? 0 : mass.front().size()));
    for (std::size_t j = 0; j < mass.size(); ++j) {
        const Rational total = sum(mass[j]);
        if (total.is_zero()) continue;
        for (std::size_t s = 0; s < mass[j].size(); ++s) q[j][s] = mass[j][s] / total;
    }
    return q;
}

std::vector<std::string> structural_errors(const Game& g, const SmmEquilibrium& e) {
    std::vector<std::string> errors;
    const std::size_t n = g.states(), k = g.actions();
    if (e.blocks.size() != n) errors.push_back("expected " + std::to_string(n) + " label blocks");
    if (e.receiver.size() != k) errors.push_back("receiver table must have one entry per action");
    if (e.posteriors.size() != k) errors.push_back("posterior table must have one row per action");
    for (const auto& row : e.posteriors)
        if (row.size() != n) errors.push_back("posterior row has wrong length");
    try {
        validate_outcome(g, e.target);
    } catch (const ValidationError& err) {
        errors.push_back(std::string("target outcome: ") + err.what());
    }
    if (!errors.empty()) return errors;

    std::vector<const LabelInterval*> block_of(n, nullptr);
    std::vector<LabelInterval> sorted = e.blocks;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    Rational cursor;
    for (const auto& b : e.blocks) {
        if (b.state >= n || block_of[b.state]) {
            errors.push_back("label blocks must name each state exactly once");
            return errors;
        }
        block_of[b.state] = &b;
        if (b.length() != g.prior(b.state))
            errors.push_back("block of state " + std::to_string(b.state + 1) + " has length " + b.length().str() +
                             ", prior is " + g.prior(b.state).str());
    }
    for (const auto& b : sorted) {
        if (b.lo != cursor) errors.push_back("label blocks do not tile [0,1] at " + cursor.str());
        cursor = b.hi;
    }
    if (cursor != Rational(1)) errors.push_back("label blocks end at " + cursor.str() + " instead of 1");

    for (std::size_t s = 0; s < n; ++s) {
        std::vector<LabelInterval> cells;
        for (const auto& c : e.cells) {
            if (c.state != s) continue;
            if (!c.action || *c.action >= k) {
                errors.push_back("cell in state " + std::to_string(s + 1) + " lacks a valid action");
                continue;
            }
            if (c.length().sign() <= 0) errors.push_back("cell in state " + std::to_string(s + 1) + " has nonpositive length");
            cells.push_back(c);
        }
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        Rational at = block_of[s]->lo;
        for (const auto& c : cells) {
            if (c.lo != at) errors.push_back("cells of state " + std::to_string(s + 1) + " do not tile its block at " + at.str());
            at = c.hi;
        }
        if (at != block_of[s]->hi)
            errors.push_back("cells of state " + std::to_string(s + 1) + " stop at " + at.str() + " short of " +
                             block_of[s]->hi.str());
    }
    for (const auto& c : e.cells)
        if (c.state >= n) errors.push_back("cell names unknown state " + std::to_string(c.state + 1));
    return errors;
}

}  // namespace

SmmEquilibrium construct_smm_equilibrium(const Game& g, const Outcome& target) {
    validate_outcome(g, target);
    CheckReport ic = check_ic(g, target);
    for (std::size_t s = 0; s < g.states(); ++s)
        if (ic.ic_slack[s].sign() < 0)
            throw AnalysisRefusal("outcome is not IC: slack " + ic.ic_slack[s].str() + " in state " + std::to_string(s + 1));
    CheckReport ob = check_obedience(g, target);
    for (std::size_t j = 0; j < g.actions(); ++j)
        for (std::size_t jp = 0; jp < g.actions(); ++jp)
            if (ob.obedience_slack[j][jp].sign() < 0)
                throw AnalysisRefusal("outcome is not obedient: slack of action " + std::to_string(j + 1) + " against " +
                                      std::to_string(jp + 1) + " is " + ob.obedience_slack[j][jp].str());

    SmmEquilibrium e;
    e.target = target;
    e.blocks = build_label_partition(g.prior());
    e.receiver.assign(g.actions(), std::nullopt);
    for (const auto& block : e.blocks) {
        Rational cursor = block.lo;
        for (std::size_t j = 0; j < g.actions(); ++j) {
            const Rational& w = target.alpha[j][block.state];
            if (w.is_zero()) continue;
            Rational next = cursor + g.prior(block.state) * w;
            e.cells.push_back({cursor, next, block.state, j});
            e.receiver[j] = j;
            cursor = std::move(next);
        }
    }
    e.posteriors = posteriors_from(cell_masses(g, e));
    return e;
}

SmmVerificationReport verify_smm_equilibrium(const Game& g, const SmmEquilibrium& e) {
    SmmVerificationReport report;
    report.structural_errors = structural_errors(g, e);
    if (!report.structural_errors.empty()) return report;

    const std::size_t n = g.states(), k = g.actions();
    const RationalMatrix mass = cell_masses(g, e);
    const RationalMatrix q = posteriors_from(mass);

    for (std::size_t j = 0; j < k; ++j) {
        if (sum(mass[j]).is_zero()) continue;
        if (e.posteriors[j] != q[j]) report.bayes_violations.push_back(j);
        if (!e.receiver[j]) {
            report.structural_errors.push_back("no receiver response for pooled message " + std::to_string(j + 1));
            continue;
        }
        RationalVector eu(k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t s = 0; s < n; ++s) eu[a] += g.utility(a, s) * q[j][s];
        std::size_t best = 0;
        for (std::size_t a = 1; a < k; ++a)
            if (eu[a] > eu[best]) best = a;
        const std::size_t played = *e.receiver[j];
        if (played >= k) {
            report.structural_errors.push_back("receiver response out of range for pooled message " + std::to_string(j + 1));
            continue;
        }
        if (eu[played] < eu[best]) report.receiver_violations.push_back({j, played, best, eu[best] - eu[played]});
    }
    if (!report.structural_errors.empty()) return report;

    // A label x in X^s_j can only reach the on-path message W_j (the cells
    // tile [0,1]); every other message containing x meets X^s, so the
    // skeptical response caps its payoff at v_lower(s), which is attained by
    // a subset of X^s.
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t s = 0; s < n; ++s) {
            if (mass[j][s].is_zero()) continue;
            const Rational payoff = g.payoff(*e.receiver[j]);
            const Rational floor = v_lower(g, s);
            if (payoff < floor) report.sender_violations.push_back({s, j, payoff, floor});
        }

    report.induced_outcome.alpha.assign(k, RationalVector(n));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t s = 0; s < n; ++s)
            if (!mass[j][s].is_zero()) report.induced_outcome.alpha[*e.receiver[j]][s] += mass[j][s] / g.prior(s);
    report.outcome_matches = report.induced_outcome == e.target;
    report.ex_ante = outcome_payoffs(g, report.induced_outcome).ex_ante;

    report.is_equilibrium = report.sender_violations.empty() && report.receiver_violations.empty() &&
                            report.bayes_violations.empty() && report.outcome_matches;
    return report;
}

std::size_t smm_skeptical_action(const Game& g, const SmmEquilibrium& e, const std::vector<LabelInterval>& message) {
    std::optional<std::size_t> action;
    for (const auto& block : e.blocks)
        for (const auto& piece : message) {
            const Rational& lo = std::max(block.lo, piece.lo);
            const Rational& hi = std::min(block.hi, piece.hi);
            if (!(lo < hi)) continue;
            std::size_t a = lowest_best_action(g, block.state);
            action = action ? std::min(*action, a) : a;
        }
    if (!action) throw std::invalid_argument("message does not meet any label block");
    return *action;
}

}  // namespace vdp
