#include "vdp/equilibrium.hpp"

#include <algorithm>

namespace vdp {

Message Message::from_mask(std::uint32_t mask) {
    if (mask == 0) throw EquilibriumFormatError("messages must be nonempty");
    Message m;
    m.mask_ = mask;
    return m;
}

Message Message::from_states(const std::vector<std::size_t>& states) {
    std::uint32_t mask = 0;
    for (std::size_t s : states) {
        if (s >= kMaxLatticeStates)
            throw EquilibriumFormatError("message state " + std::to_string(s + 1) + " beyond lattice limit");
        mask |= std::uint32_t{1} << s;
    }
    return from_mask(mask);
}

std::vector<std::size_t> Message::states() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < 32; ++s)
        if (contains(s)) out.push_back(s);
    return out;
}

std::string Message::str() const {
    std::string out = "{";
    bool first = true;
    for (std::size_t s : states()) {
        if (!first) out += ",";
        out += std::to_string(s + 1);
        first = false;
    }
    return out + "}";
}

namespace {

std::uint32_t lattice_size(const Game& g) {
    if (g.states() > kMaxLatticeStates)
        throw EquilibriumFormatError("message lattice limited to " + std::to_string(kMaxLatticeStates) + " states, game has " +
                                     std::to_string(g.states()));
    return std::uint32_t{1} << g.states();
}

void require_distribution(const RationalVector& d, std::size_t size, const std::string& what) {
    if (d.size() != size)
        throw EquilibriumFormatError(what + " has " + std::to_string(d.size()) + " entries, expected " + std::to_string(size));
    for (const auto& p : d)
        if (p.sign() < 0) throw EquilibriumFormatError(what + " has a negative probability");
    if (sum(d) != Rational(1)) throw EquilibriumFormatError(what + " sums to " + sum(d).str());
}

RationalVector expected_utilities(const Game& g, const RationalVector& belief) {
    RationalVector eu(g.actions());
    for (std::size_t j = 0; j < g.actions(); ++j)
        for (std::size_t s = 0; s < g.states(); ++s)
            if (!belief[s].is_zero()) eu[j] += g.utility(j, s) * belief[s];
    return eu;
}

}  // namespace

void validate_equilibrium(const Game& g, const Equilibrium& e) {
    const std::uint32_t lattice = lattice_size(g);
    if (e.sender.size() != g.states())
        throw EquilibriumFormatError("sender strategy covers " + std::to_string(e.sender.size()) + " states, game has " +
                                     std::to_string(g.states()));
    for (std::size_t s = 0; s < g.states(); ++s) {
        Rational total;
        for (const auto& mp : e.sender[s]) {
            if (mp.message.mask() == 0 || mp.message.mask() >= lattice)
                throw EquilibriumFormatError("sender uses message " + mp.message.str() + " outside the state space");
            if (!mp.message.contains(s))
                throw EquilibriumFormatError("sender sends " + mp.message.str() + " in state " + std::to_string(s + 1) +
                                             ", which is not verifiable there");
            if (mp.probability.sign() < 0) throw EquilibriumFormatError("negative sender probability");
            total += mp.probability;
        }
        if (total != Rational(1))
            throw EquilibriumFormatError("sender strategy in state " + std::to_string(s + 1) + " sums to " + total.str());
    }
    for (std::uint32_t mask = 1; mask < lattice; ++mask) {
        Message m = Message::from_mask(mask);
        auto r = e.receiver.find(m);
        if (r == e.receiver.end()) throw EquilibriumFormatError("receiver strategy undefined for message " + m.str());
        require_distribution(r->second, g.actions(), "receiver response to " + m.str());
        auto b = e.beliefs.find(m);
        if (b == e.beliefs.end()) throw EquilibriumFormatError("belief undefined for message " + m.str());
        require_distribution(b->second, g.states(), "belief after " + m.str());
    }
    if (e.receiver.size() != lattice - 1 || e.beliefs.size() != lattice - 1)
        throw EquilibriumFormatError("receiver strategy or beliefs mention messages outside the state space");
}

SkepticalResponse skeptical_response(const Game& g, const Message& m) {
    SkepticalResponse out{g.actions(), {}, RationalVector(g.states())};
    for (std::size_t s : m.states()) {
        if (s >= g.states()) throw EquilibriumFormatError("message " + m.str() + " mentions an unknown state");
        out.action = std::min(out.action, lowest_best_action(g, s));
    }
    // State s lies in A_i iff i is one of its best responses.
    for (std::size_t s : m.states()) {
        auto best = best_actions(g, s);
        if (std::find(best.begin(), best.end(), out.action) != best.end()) out.support.push_back(s);
    }
    const Rational w = Rational(1) / Rational(static_cast<long long>(out.support.size()));
    for (std::size_t s : out.support) out.belief[s] = w;
    return out;
}

Equilibrium construct_recommendation_equilibrium(const Game& g, const Partition& p) {
    validate_partition(g, p);
    const std::uint32_t lattice = lattice_size(g);
    const Outcome o = Outcome::from_partition(p, g.actions());

    CheckReport ic = check_ic(g, o);
    for (std::size_t s = 0; s < g.states(); ++s)
        if (ic.ic_slack[s].sign() < 0)
            throw AnalysisRefusal("partition " + format_partition(p) + " is not IC: slack " + ic.ic_slack[s].str() +
                                  " in state " + std::to_string(s + 1));
    CheckReport ob = check_obedience(g, o);
    for (std::size_t j = 0; j < g.actions(); ++j)
        for (std::size_t jp = 0; jp < g.actions(); ++jp)
            if (ob.obedience_slack[j][jp].sign() < 0)
                throw AnalysisRefusal("partition " + format_partition(p) + " is not obedient: slack of action " +
                                      std::to_string(j + 1) + " against " + std::to_string(jp + 1) + " is " +
                                      ob.obedience_slack[j][jp].str());

    std::vector<std::uint32_t> pool(g.actions(), 0);
    for (std::size_t s = 0; s < g.states(); ++s) pool[p.assign[s]] |= std::uint32_t{1} << s;

    Equilibrium e;
    e.sender.resize(g.states());
    for (std::size_t s = 0; s < g.states(); ++s)
        e.sender[s].push_back({Message::from_mask(pool[p.assign[s]]), Rational(1)});

    std::map<std::uint32_t, std::size_t> on_path;
    for (std::size_t j = 0; j < g.actions(); ++j)
        if (pool[j] != 0) on_path[pool[j]] = j;

    for (std::uint32_t mask = 1; mask < lattice; ++mask) {
        Message m = Message::from_mask(mask);
        RationalVector response(g.actions());
        auto hit = on_path.find(mask);
        if (hit != on_path.end()) {
            response[hit->second] = 1;
            RationalVector belief(g.states());
            Rational mass;
            for (std::size_t s : m.states()) mass += g.prior(s);
            for (std::size_t s : m.states()) belief[s] = g.prior(s) / mass;
            e.beliefs.emplace(m, std::move(belief));
        } else {
            SkepticalResponse sk = skeptical_response(g, m);
            response[sk.action] = 1;
            e.beliefs.emplace(m, std::move(sk.belief));
        }
        e.receiver.emplace(m, std::move(response));
    }
    return e;
}

VerificationReport verify_equilibrium(const Game& g, const Equilibrium& e) {
    validate_equilibrium(g, e);
    const std::uint32_t lattice = lattice_size(g);
    const std::size_t n = g.states(), k = g.actions();
    VerificationReport report;

    std::vector<Rational> message_payoff(lattice);
    for (const auto& [m, tau] : e.receiver)
        for (std::size_t j = 0; j < k; ++j) message_payoff[m.mask()] += g.payoff(j) * tau[j];

    // (i) sender optimality against every verifiable message
    for (std::size_t s = 0; s < n; ++s) {
        const std::uint32_t bit = std::uint32_t{1} << s;
        std::uint32_t best = bit;
        for (std::uint32_t mask = 1; mask < lattice; ++mask)
            if ((mask & bit) && message_payoff[mask] > message_payoff[best]) best = mask;
        for (const auto& mp : e.sender[s]) {
            if (mp.probability.is_zero()) continue;
            const Rational gain = message_payoff[best] - message_payoff[mp.message.mask()];
            if (gain.sign() > 0) report.sender_violations.push_back({s, mp.message, Message::from_mask(best), gain});
        }
    }

    // (iii) Bayes consistency on path
    std::map<Message, RationalVector> joint;
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& mp : e.sender[s]) {
            if (mp.probability.is_zero()) continue;
            auto& row = joint.try_emplace(mp.message, RationalVector(n)).first->second;
            row[s] += g.prior(s) * mp.probability;
        }
    for (const auto& [m, row] : joint) {
        const Rational mass = sum(row);
        const RationalVector& belief = e.beliefs.at(m);
        for (std::size_t s = 0; s < n; ++s)
            if (belief[s] != row[s] / mass) {
                report.bayes_violations.push_back(m);
                break;
            }
    }

    for (const auto& [m, belief] : e.beliefs) {
        // (iv) belief support inside the message
        for (std::size_t s = 0; s < n; ++s)
            if (!belief[s].is_zero() && !m.contains(s)) {
                report.belief_support_violations.push_back(m);
                break;
            }
        // (ii) receiver optimality given the belief
        const RationalVector eu = expected_utilities(g, belief);
        std::size_t best = 0;
        for (std::size_t j = 1; j < k; ++j)
            if (eu[j] > eu[best]) best = j;
        const RationalVector& tau = e.receiver.at(m);
        for (std::size_t j = 0; j < k; ++j)
            if (!tau[j].is_zero() && eu[j] < eu[best]) report.receiver_violations.push_back({m, j, best, eu[best] - eu[j]});
    }

    report.induced_outcome.alpha.assign(k, RationalVector(n));
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& mp : e.sender[s]) {
            const RationalVector& tau = e.receiver.at(mp.message);
            for (std::size_t j = 0; j < k; ++j) report.induced_outcome.alpha[j][s] += mp.probability * tau[j];
        }

    report.is_equilibrium = report.sender_violations.empty() && report.receiver_violations.empty() &&
                            report.bayes_violations.empty() && report.belief_support_violations.empty();
    return report;
}

std::vector<std::size_t> mixing_diagnostic(const Game& g, const Equilibrium& e) {
    VerificationReport report = verify_equilibrium(g, e);
    std::vector<std::size_t> offenders;
    for (std::size_t s = 0; s < g.states(); ++s) {
        std::size_t used = 0;
        for (std::size_t j = 0; j < g.actions(); ++j)
            if (!report.induced_outcome.alpha[j][s].is_zero()) ++used;
        if (used < 2) continue;
        bool receiver_mixes = false;
        for (const auto& mp : e.sender[s]) {
            if (mp.probability.is_zero()) continue;
            std::size_t support = 0;
            for (const auto& p : e.receiver.at(mp.message))
                if (!p.is_zero()) ++support;
            receiver_mixes = receiver_mixes || support > 1;
        }
        if (!receiver_mixes) offenders.push_back(s);
    }
    return offenders;
}

std::vector<Partition> enumerate_equilibrium_outcomes(const Game& g, const SearchOptions& opts) {
    std::vector<Partition> outcomes = all_ic_obedient_partitions(g, opts);
    if (g.states() <= kMaxLatticeStates) {
        for (const Partition& p : outcomes) {
            VerificationReport r = verify_equilibrium(g, construct_recommendation_equilibrium(g, p));
            if (!r.is_equilibrium || r.induced_outcome != Outcome::from_partition(p, g.actions()))
                throw std::logic_error("recommendation equilibrium for " + format_partition(p) + " failed verification");
        }
    }
    return outcomes;
}

}  // namespace vdp
