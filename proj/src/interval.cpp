#include "vdp/interval.hpp"

namespace vdp {

void validate_interval_game(const MeanThresholdGame& g) {
    using K = ValidationError::Kind;
    const std::size_t k = g.actions();
    if (k < 2) throw ValidationError(K::TooFewActions, "interval game needs at least 2 actions");
    if (g.cutoffs.size() != k + 1)
        throw ValidationError(K::DimensionMismatch, "expected " + std::to_string(k + 1) + " cutoffs for " + std::to_string(k) +
                                                        " actions, got " + std::to_string(g.cutoffs.size()));
    if (!g.cutoffs.front().is_zero() || g.cutoffs.back() != Rational(1))
        throw ValidationError(K::DimensionMismatch, "cutoffs must start at 0 and end at 1");
    for (std::size_t i = 1; i < g.cutoffs.size(); ++i)
        if (g.cutoffs[i] < g.cutoffs[i - 1])
            throw ValidationError(K::DimensionMismatch, "cutoffs must be nondecreasing");
    for (std::size_t j = 1; j < k; ++j)
        if (!(g.sender_payoff[j - 1] < g.sender_payoff[j]))
            throw ValidationError(K::PayoffNotIncreasing, "sender_payoff not strictly increasing at action " + std::to_string(j + 1));
}

bool IntervalOutcome::is_deterministic() const {
    for (const auto& p : pieces) {
        std::size_t used = 0;
        for (const auto& w : p.weights)
            if (!w.is_zero()) ++used;
        if (used != 1) return false;
    }
    return true;
}

void validate_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o) {
    using K = ValidationError::Kind;
    if (o.pieces.empty()) throw ValidationError(K::MalformedOutcome, "interval outcome has no pieces");
    Rational cursor;
    for (std::size_t i = 0; i < o.pieces.size(); ++i) {
        const auto& p = o.pieces[i];
        const std::string where = "piece " + std::to_string(i + 1);
        if (p.lo != cursor) throw ValidationError(K::MalformedOutcome, where + " starts at " + p.lo.str() + ", expected " + cursor.str());
        if (!(p.lo < p.hi)) throw ValidationError(K::MalformedOutcome, where + " is empty");
        if (p.weights.size() != g.actions())
            throw ValidationError(K::DimensionMismatch, where + " has " + std::to_string(p.weights.size()) + " weights");
        for (const auto& w : p.weights)
            if (w.sign() < 0) throw ValidationError(K::MalformedOutcome, where + " has a negative weight");
        if (sum(p.weights) != Rational(1))
            throw ValidationError(K::MalformedOutcome, where + " weights sum to " + sum(p.weights).str());
        cursor = p.hi;
    }
    if (cursor != Rational(1)) throw ValidationError(K::MalformedOutcome, "pieces end at " + cursor.str() + " instead of 1");
}

std::size_t lowest_action_near_right_end(const MeanThresholdGame& g, const Rational& hi) {
    for (std::size_t j = 0; j < g.actions(); ++j)
        if (g.cutoffs[j + 1] >= hi) return j;
    return g.actions() - 1;
}

IntervalEvaluation evaluate_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o) {
    validate_interval_game(g);
    validate_interval_outcome(g, o);
    const std::size_t k = g.actions();
    IntervalEvaluation ev;
    ev.moments.mass.assign(k, Rational());
    ev.moments.first_moment.assign(k, Rational());
    ev.moments.mean.assign(k, std::nullopt);

    for (std::size_t i = 0; i < o.pieces.size(); ++i) {
        const auto& p = o.pieces[i];
        const Rational length = p.hi - p.lo;
        const Rational moment = (p.hi * p.hi - p.lo * p.lo) / Rational(2);
        const std::size_t floor_action = lowest_action_near_right_end(g, p.hi);
        for (std::size_t j = 0; j < k; ++j) {
            if (p.weights[j].is_zero()) continue;
            ev.moments.mass[j] += p.weights[j] * length;
            ev.moments.first_moment[j] += p.weights[j] * moment;
            if (j < floor_action) ev.ic_failures.emplace_back(i, j);
        }
    }

    ev.obedient = true;
    for (std::size_t j = 0; j < k; ++j) {
        if (ev.moments.mass[j].is_zero()) continue;
        Rational mean = ev.moments.first_moment[j] / ev.moments.mass[j];
        if (mean < g.cutoffs[j] || mean > g.cutoffs[j + 1]) ev.obedient = false;
        ev.moments.mean[j] = std::move(mean);
        ev.ex_ante += g.sender_payoff[j] * ev.moments.mass[j];
    }
    ev.ic = ev.ic_failures.empty();
    return ev;
}

IntervalOutcome purify_interval_outcome(const MeanThresholdGame& g, const IntervalOutcome& o) {
    validate_interval_game(g);
    validate_interval_outcome(g, o);
    const std::size_t k = g.actions();
    IntervalOutcome out;
    for (const auto& p : o.pieces) {
        std::vector<std::size_t> used;
        for (std::size_t j = k; j-- > 0;)
            if (!p.weights[j].is_zero()) used.push_back(j);
        if (used.size() == 1) {
            out.pieces.push_back(p);
            continue;
        }

        const Rational mid = (p.lo + p.hi) / Rational(2);
        const Rational length = p.hi - p.lo;
        auto point_mass = [k](std::size_t j) {
            RationalVector w(k);
            w[j] = 1;
            return w;
        };

        // used[0] takes [mid - h_1, mid + h_1); used[r] takes the flanks between h_r and h_{r+1}.
        std::vector<Rational> radius{Rational()};
        for (std::size_t j : used) radius.push_back(radius.back() + p.weights[j] * length / Rational(2));

        std::vector<IntervalPiece> left, right;
        for (std::size_t r = 1; r < used.size(); ++r) {
            left.push_back({mid - radius[r + 1], mid - radius[r], point_mass(used[r])});
            right.push_back({mid + radius[r], mid + radius[r + 1], point_mass(used[r])});
        }
        for (auto it = left.rbegin(); it != left.rend(); ++it) out.pieces.push_back(*it);
        out.pieces.push_back({mid - radius[1], mid + radius[1], point_mass(used[0])});
        for (auto& piece : right) out.pieces.push_back(std::move(piece));
    }
    return out;
}

IntervalOutcome interval_full_revelation(const MeanThresholdGame& g) {
    validate_interval_game(g);
    IntervalOutcome out;
    for (std::size_t j = 0; j < g.actions(); ++j) {
        if (!(g.cutoffs[j] < g.cutoffs[j + 1])) continue;
        RationalVector w(g.actions());
        w[j] = 1;
        out.pieces.push_back({g.cutoffs[j], g.cutoffs[j + 1], std::move(w)});
    }
    return out;
}

Game discretize_game(const MeanThresholdGame& g, std::size_t n) {
    validate_interval_game(g);
    if (n < 2) throw ValidationError(ValidationError::Kind::TooFewStates, "grid needs at least 2 cells");
    const std::size_t k = g.actions();
    const Rational cell(1, static_cast<long long>(n));
    GameSpec spec;
    spec.prior.assign(n, cell);
    spec.sender_payoff = g.sender_payoff;
    spec.receiver_utility.assign(k, RationalVector(n));
    Rational offset;
    for (std::size_t j = 0; j < k; ++j) {
        if (j > 0) offset += g.cutoffs[j];
        for (std::size_t i = 0; i < n; ++i) {
            const Rational t(static_cast<long long>(2 * i + 1), static_cast<long long>(2 * n));
            spec.receiver_utility[j][i] = Rational(static_cast<long long>(j)) * t - offset;
        }
    }
    return validate_game(spec);
}

}  // namespace vdp
