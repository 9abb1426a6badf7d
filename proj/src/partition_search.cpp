#include "vdp/partition_search.hpp"

#include "vdp/lp.hpp"

namespace vdp {

namespace {

enum class Mode { FirstWithPayoff, Best, All };

class Searcher {
public:
    Searcher(const Game& g, Mode mode, const SearchOptions& opts) : g_(g), mode_(mode), opts_(opts) {
        const std::size_t n = g.states(), k = g.actions();
        allowed_.resize(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t j = lowest_best_action(g, s); j < k; ++j) allowed_[s].push_back(j);

        // diff_[j][jp][s] = (u(j,s) - u(jp,s)) * prior(s)
        diff_.assign(k, std::vector<RationalVector>(k, RationalVector(n)));
        optimistic_.assign(k, std::vector<RationalVector>(k, RationalVector(n + 1)));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t jp = 0; jp < k; ++jp) {
                if (j == jp) continue;
                for (std::size_t s = n; s-- > 0;) {
                    diff_[j][jp][s] = (g.utility(j, s) - g.utility(jp, s)) * g.prior(s);
                    Rational gain = diff_[j][jp][s].sign() > 0 && j >= allowed_[s].front() ? diff_[j][jp][s] : Rational();
                    optimistic_[j][jp][s] = optimistic_[j][jp][s + 1] + gain;
                }
            }
        best_suffix_.assign(n + 1, Rational());
        for (std::size_t s = n; s-- > 0;)
            best_suffix_[s] = best_suffix_[s + 1] + g.payoff(k - 1) * g.prior(s);

        slack_.assign(k, RationalVector(k));
        current_.assign.assign(n, 0);
    }

    void set_target(Rational t) { target_ = std::move(t); }
    void set_floor(Rational f) { best_value_ = std::move(f); }

    void run() { descend(0); }

    bool done() const { return stop_; }
    const std::vector<Partition>& hits() const { return hits_; }
    const std::optional<ScoredPartition>& best() const { return best_; }

private:
    // Upper bound on the final payoff reachable from the current prefix, or
    // nullopt when no obedient completion exists even fractionally.
    std::optional<Rational> lp_bound(std::size_t from) const {
        const std::size_t n = g_.states(), k = g_.actions();
        std::vector<std::pair<std::size_t, std::size_t>> vars;  // (action, state)
        for (std::size_t s = from; s < n; ++s)
            for (std::size_t j : allowed_[s]) vars.emplace_back(j, s);
        LinearProgram lp(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v) lp.objective[v] = g_.payoff(vars[v].first);
        for (std::size_t s = from; s < n; ++s) {
            RationalVector row(vars.size());
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (vars[v].second == s) row[v] = 1;
            lp.add_row(std::move(row), Sense::Equal, g_.prior(s));
        }
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t jp = 0; jp < k; ++jp) {
                if (j == jp) continue;
                RationalVector row(vars.size());
                bool any = false;
                for (std::size_t v = 0; v < vars.size(); ++v)
                    if (vars[v].first == j) {
                        row[v] = g_.utility(j, vars[v].second) - g_.utility(jp, vars[v].second);
                        any = any || !row[v].is_zero();
                    }
                if (!any) {
                    if (slack_[j][jp].sign() < 0) return std::nullopt;
                    continue;
                }
                lp.add_row(std::move(row), Sense::GreaterEqual, -slack_[j][jp]);
            }
        LpResult r = lp_solve(lp);
        if (!r.optimal()) return std::nullopt;
        return payoff_ + r.value;
    }

    bool prune(std::size_t s) {
        const std::size_t k = g_.actions();
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t jp = 0; jp < k; ++jp)
                if (j != jp && (slack_[j][jp] + optimistic_[j][jp][s]).sign() < 0) return true;
        if (mode_ == Mode::All) return false;

        auto too_low = [&](const Rational& bound) {
            if (mode_ == Mode::FirstWithPayoff) return bound < target_;
            return bound < best_value_ || (best_ && bound == best_value_);
        };
        if (too_low(payoff_ + best_suffix_[s])) return true;
        if (opts_.lp_bound && s < g_.states()) {
            auto bound = lp_bound(s);
            if (!bound || too_low(*bound)) return true;
        }
        return false;
    }

    void leaf() {
        switch (mode_) {
        case Mode::FirstWithPayoff:
            if (payoff_ == target_) {
                hits_.push_back(current_);
                stop_ = true;
            }
            break;
        case Mode::Best:
            if (payoff_ > best_value_ || (!best_ && payoff_ == best_value_)) {
                best_value_ = payoff_;
                best_ = ScoredPartition{current_, payoff_};
            }
            break;
        case Mode::All: hits_.push_back(current_); break;
        }
    }

    void apply(std::size_t s, std::size_t j, int dir) {
        const Rational contribution = g_.payoff(j) * g_.prior(s);
        if (dir > 0)
            payoff_ += contribution;
        else
            payoff_ -= contribution;
        for (std::size_t jp = 0; jp < g_.actions(); ++jp) {
            if (jp == j) continue;
            if (dir > 0)
                slack_[j][jp] += diff_[j][jp][s];
            else
                slack_[j][jp] -= diff_[j][jp][s];
        }
    }

    void descend(std::size_t s) {
        if (++nodes_ > opts_.node_budget)
            throw BudgetExceeded("partition search exceeded node budget of " + std::to_string(opts_.node_budget));
        if (prune(s)) return;
        if (s == g_.states()) {
            leaf();
            return;
        }
        for (std::size_t j : allowed_[s]) {
            current_.assign[s] = j;
            apply(s, j, +1);
            descend(s + 1);
            apply(s, j, -1);
            if (stop_) return;
        }
    }

    const Game& g_;
    Mode mode_;
    SearchOptions opts_;
    std::vector<std::vector<std::size_t>> allowed_;
    std::vector<std::vector<RationalVector>> diff_;
    std::vector<std::vector<RationalVector>> optimistic_;
    RationalVector best_suffix_;

    RationalMatrix slack_;
    Rational payoff_;
    Partition current_;
    std::uint64_t nodes_ = 0;

    Rational target_;
    Rational best_value_;
    std::optional<ScoredPartition> best_;
    std::vector<Partition> hits_;
    bool stop_ = false;
};

}  // namespace

std::optional<Partition> first_partition_with_payoff(const Game& g, const Rational& target, const SearchOptions& opts) {
    Searcher search(g, Mode::FirstWithPayoff, opts);
    search.set_target(target);
    search.run();
    if (search.hits().empty()) return std::nullopt;
    return search.hits().front();
}

ScoredPartition best_ic_obedient_partition(const Game& g, const SearchOptions& opts) {
    Searcher search(g, Mode::Best, opts);
    // Full revelation is always IC and obedient, so its payoff is a valid floor.
    search.set_floor(ex_ante_payoff(g, full_revelation_partition(g)));
    search.run();
    return *search.best();
}

std::vector<Partition> all_ic_obedient_partitions(const Game& g, const SearchOptions& opts) {
    SearchOptions o = opts;
    o.lp_bound = false;
    Searcher search(g, Mode::All, o);
    search.run();
    return search.hits();
}

}  // namespace vdp
