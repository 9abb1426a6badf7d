// vdp: command-line front end for the persuasion-game solver.
// Exit status: 0 success, 1 analysis refusal or failed verdict, 2 usage/parse error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "vdp/commitment.hpp"
#include "vdp/equilibrium.hpp"
#include "vdp/interval.hpp"
#include "vdp/io.hpp"
#include "vdp/smm.hpp"

using namespace vdp;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kRefused = 1;
constexpr int kUsage = 2;

struct Options {
    std::string game_path;
    std::string format = "text";
    std::uint64_t budget = SearchOptions{}.node_budget;
    std::size_t grid = 0;
    std::string outcome_path;
    std::string partition;
    std::string equilibrium_path;

    bool machine() const { return format == "machine"; }
    SearchOptions search() const {
        SearchOptions o;
        o.node_budget = budget;
        return o;
    }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt_vector(const RationalVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
    return out + ")";
}

void print_outcome(std::ostream& os, const Outcome& o) {
    for (std::size_t j = 0; j < o.actions(); ++j) os << "  action " << j + 1 << ": " << fmt_vector(o.alpha[j]) << "\n";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Game finite_game(const io::AnyGame& any) {
    if (const Game* g = std::get_if<Game>(&any)) return *g;
    throw UsageError("this command needs a finite game (\"states\"); use discretize for interval games");
}

MeanThresholdGame interval_game(const io::AnyGame& any) {
    if (const auto* g = std::get_if<MeanThresholdGame>(&any)) return *g;
    throw UsageError("this command needs an interval game (\"cutoffs\")");
}

Outcome target_outcome(const Game& g, const Options& opt) {
    if (!opt.partition.empty() && !opt.outcome_path.empty()) throw UsageError("give either --outcome or --partition, not both");
    if (!opt.partition.empty()) {
        Partition p = io::parse_partition_list(opt.partition);
        validate_partition(g, p);
        return Outcome::from_partition(p, g.actions());
    }
    if (!opt.outcome_path.empty()) {
        Outcome o = io::outcome_from_json(io::read_json_file(opt.outcome_path));
        validate_outcome(g, o);
        return o;
    }
    throw UsageError("an outcome is required: --outcome <path> or --partition <actions>");
}

int cmd_solve(const Game& g, const Options& opt) {
    CommitmentSolution sol = solve_commitment(g);
    if (opt.machine()) {
        json out = io::outcome_to_json(sol.outcome);
        out["payoff"] = sol.payoff.str();
        out["deterministic"] = sol.is_deterministic;
        out["ic"] = sol.ic;
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "commitment value V* = " << sol.payoff.str() << "\n"
              << "deterministic: " << yes_no(sol.is_deterministic) << "\n"
              << "IC: " << yes_no(sol.ic) << "\n"
              << "optimal outcome alpha[action][state]:\n";
    print_outcome(std::cout, sol.outcome);
    return kOk;
}

int cmd_check_finite(const Game& g, const Options& opt) {
    Outcome o = target_outcome(g, opt);
    CheckReport ic = check_ic(g, o);
    CheckReport ob = check_obedience(g, o);
    Payoffs pay = outcome_payoffs(g, o);
    if (opt.machine()) {
        json out = io::check_report_to_json(ic, ob);
        out["ex_ante"] = pay.ex_ante.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "IC: " << yes_no(ic.passed) << "\n  slack by state: " << fmt_vector(ic.ic_slack) << "\n"
                  << "obedient: " << yes_no(ob.passed) << "\n";
        for (std::size_t j = 0; j < g.actions(); ++j)
            for (std::size_t jp = 0; jp < g.actions(); ++jp)
                if (j != jp)
                    std::cout << "  slack " << j + 1 << " vs " << jp + 1 << ": " << ob.obedience_slack[j][jp].str() << "\n";
        std::cout << "ex-ante payoff: " << pay.ex_ante.str() << "\n";
    }
    return ic.passed && ob.passed ? kOk : kRefused;
}

IntervalOutcome interval_outcome_arg(const MeanThresholdGame& g, const Options& opt) {
    if (opt.outcome_path.empty()) throw UsageError("--outcome <path> is required for interval games");
    IntervalOutcome o = io::interval_outcome_from_json(io::read_json_file(opt.outcome_path));
    validate_interval_outcome(g, o);
    return o;
}

void print_interval_evaluation(const IntervalEvaluation& ev) {
    for (std::size_t j = 0; j < ev.moments.mass.size(); ++j) {
        std::cout << "  action " << j + 1 << ": mass " << ev.moments.mass[j].str();
        if (ev.moments.mean[j]) std::cout << ", mean " << ev.moments.mean[j]->str();
        std::cout << "\n";
    }
    std::cout << "obedient: " << yes_no(ev.obedient) << "\nIC: " << yes_no(ev.ic) << "\n";
    for (const auto& [piece, action] : ev.ic_failures)
        std::cout << "  piece " << piece + 1 << " assigns action " << action + 1 << " below v_lower\n";
    std::cout << "ex-ante payoff: " << ev.ex_ante.str() << "\n";
}

int cmd_check_interval(const MeanThresholdGame& g, const Options& opt) {
    IntervalEvaluation ev = evaluate_interval_outcome(g, interval_outcome_arg(g, opt));
    if (opt.machine())
        std::cout << io::interval_evaluation_to_json(ev).dump(2) << "\n";
    else
        print_interval_evaluation(ev);
    return ev.ic && ev.obedient ? kOk : kRefused;
}

void print_verification(const VerificationReport& r) {
    std::cout << "equilibrium: " << yes_no(r.is_equilibrium) << "\n";
    for (const auto& v : r.sender_violations)
        std::cout << "  state " << v.state + 1 << " gains " << v.gain.str() << " by sending " << v.better_message.str()
                  << " instead of " << v.message.str() << "\n";
    for (const auto& v : r.receiver_violations)
        std::cout << "  after " << v.message.str() << " action " << v.better_action + 1 << " beats " << v.action + 1
                  << " by " << v.gain.str() << "\n";
    for (const auto& m : r.bayes_violations) std::cout << "  belief at " << m.str() << " is not Bayes-consistent\n";
    for (const auto& m : r.belief_support_violations) std::cout << "  belief at " << m.str() << " leaves the message\n";
    std::cout << "induced outcome:\n";
    print_outcome(std::cout, r.induced_outcome);
}

int cmd_equilibrium(const Game& g, const Options& opt) {
    if (!opt.equilibrium_path.empty()) {
        Equilibrium e = io::equilibrium_from_json(io::read_json_file(opt.equilibrium_path));
        VerificationReport r = verify_equilibrium(g, e);
        if (opt.machine())
            std::cout << io::verification_to_json(r).dump(2) << "\n";
        else
            print_verification(r);
        return r.is_equilibrium ? kOk : kRefused;
    }
    if (!opt.partition.empty()) {
        Partition p = io::parse_partition_list(opt.partition);
        validate_partition(g, p);
        Equilibrium e = construct_recommendation_equilibrium(g, p);
        VerificationReport r = verify_equilibrium(g, e);
        if (opt.machine()) {
            json out = io::equilibrium_to_json(e);
            out["verification"] = io::verification_to_json(r);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "recommendation equilibrium for partition " << format_partition(p) << "\n";
            for (std::size_t s = 0; s < g.states(); ++s)
                for (const auto& mp : e.sender[s])
                    std::cout << "  state " << s + 1 << " sends " << mp.message.str() << " w.p. " << mp.probability.str() << "\n";
            print_verification(r);
        }
        return r.is_equilibrium ? kOk : kRefused;
    }
    std::vector<Partition> all = enumerate_equilibrium_outcomes(g, opt.search());
    if (opt.machine()) {
        json list = json::array();
        for (const auto& p : all) {
            json entry = io::partition_to_json(p);
            entry["payoff"] = ex_ante_payoff(g, p).str();
            list.push_back(entry);
        }
        std::cout << json{{"equilibrium_outcomes", list}}.dump(2) << "\n";
    } else {
        std::cout << all.size() << " deterministic equilibrium outcome(s):\n";
        for (const auto& p : all) std::cout << "  " << format_partition(p) << "  payoff " << ex_ante_payoff(g, p).str() << "\n";
    }
    return kOk;
}

int cmd_smm(const Game& g, const Options& opt) {
    SmmEquilibrium e = construct_smm_equilibrium(g, target_outcome(g, opt));
    SmmVerificationReport r = verify_smm_equilibrium(g, e);
    if (opt.machine()) {
        json out = io::smm_equilibrium_to_json(e);
        out["verification"] = io::smm_verification_to_json(r);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "label blocks:\n";
        for (const auto& b : e.blocks) std::cout << "  state " << b.state + 1 << ": [" << b.lo.str() << ", " << b.hi.str() << ")\n";
        for (std::size_t j = 0; j < g.actions(); ++j) {
            if (!e.receiver[j]) continue;
            std::cout << "pooled message W_" << j + 1 << " -> action " << *e.receiver[j] + 1 << ", posterior "
                      << fmt_vector(e.posteriors[j]) << "\n";
            for (const auto& c : e.pooled_message(j))
                std::cout << "  [" << c.lo.str() << ", " << c.hi.str() << ") from state " << c.state + 1 << "\n";
        }
        std::cout << "verified: " << yes_no(r.is_equilibrium) << "\n";
        for (const auto& err : r.structural_errors) std::cout << "  " << err << "\n";
        std::cout << "ex-ante payoff: " << r.ex_ante.str() << "\n";
    }
    return r.is_equilibrium ? kOk : kRefused;
}

int cmd_gap(const Game& g, const Options& opt) {
    EquilibriumCommitmentVerdict v = decide_commitment_in_equilibrium(g, opt.search());
    if (opt.machine()) {
        std::cout << io::verdict_to_json(v).dump(2) << "\n";
        return kOk;
    }
    std::cout << "commitment value V* = " << v.commitment_payoff.str() << "\n"
              << "attainable in equilibrium: " << yes_no(v.attainable) << "\n";
    if (v.witness) std::cout << "witness partition: " << format_partition(*v.witness) << "\n";
    std::cout << "best equilibrium partition: " << format_partition(v.best_equilibrium.partition) << "  payoff "
              << v.best_equilibrium.payoff.str() << "\n"
              << "gap: " << v.gap.str() << "\n";
    return kOk;
}

int cmd_purify(const MeanThresholdGame& g, const Options& opt) {
    IntervalOutcome in = interval_outcome_arg(g, opt);
    IntervalOutcome out = purify_interval_outcome(g, in);
    IntervalEvaluation before = evaluate_interval_outcome(g, in);
    IntervalEvaluation after = evaluate_interval_outcome(g, out);
    if (opt.machine()) {
        json j = io::interval_outcome_to_json(out);
        j["evaluation"] = io::interval_evaluation_to_json(after);
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << "purified pieces:\n";
    for (const auto& p : out.pieces) {
        std::size_t action = 0;
        while (p.weights[action].is_zero()) ++action;
        std::cout << "  [" << p.lo.str() << ", " << p.hi.str() << ") -> action " << action + 1 << "\n";
    }
    std::cout << "input:\n";
    print_interval_evaluation(before);
    std::cout << "purified:\n";
    print_interval_evaluation(after);
    return kOk;
}

int cmd_discretize(const MeanThresholdGame& g, const Options& opt) {
    if (opt.grid == 0) throw UsageError("--grid <n> is required");
    Game finite = discretize_game(g, opt.grid);
    if (opt.machine()) {
        std::cout << io::game_to_json(finite).dump(2) << "\n";
        return kOk;
    }
    CommitmentSolution sol = solve_commitment(finite);
    std::cout << "grid of " << opt.grid << " states, " << finite.actions() << " actions\n"
              << "commitment value V*_" << opt.grid << " = " << sol.payoff.str() << "\n"
              << "deterministic: " << yes_no(sol.is_deterministic) << "\n";
    return kOk;
}

int dispatch(const std::string& verb, const Options& opt) {
    io::AnyGame any = io::parse_game_file(opt.game_path);
    if (verb == "solve") return cmd_solve(finite_game(any), opt);
    if (verb == "check") {
        if (std::holds_alternative<Game>(any)) return cmd_check_finite(std::get<Game>(any), opt);
        return cmd_check_interval(std::get<MeanThresholdGame>(any), opt);
    }
    if (verb == "equilibrium") return cmd_equilibrium(finite_game(any), opt);
    if (verb == "smm") return cmd_smm(finite_game(any), opt);
    if (verb == "gap") return cmd_gap(finite_game(any), opt);
    if (verb == "purify") return cmd_purify(interval_game(any), opt);
    if (verb == "discretize") return cmd_discretize(interval_game(any), opt);
    throw UsageError("unknown command " + verb);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and verifier for persuasion games with verifiable messages"};
    app.require_subcommand(1, 1);
    Options opt;

    struct VerbSpec {
        const char* name;
        const char* help;
        bool outcome, partition, equilibrium, grid, budget;
    };
    const VerbSpec verbs[] = {
        {"solve", "Commitment value and optimal outcome", false, false, false, false, false},
        {"check", "IC and obedience slacks of an outcome", true, true, false, false, false},
        {"equilibrium", "Build, verify or enumerate equilibria", false, true, true, false, true},
        {"smm", "Label-augmented equilibrium for an outcome", true, true, false, false, false},
        {"gap", "Is the commitment value attainable in equilibrium", false, false, false, false, true},
        {"purify", "Deterministic outcome with the same moments", true, false, false, false, false},
        {"discretize", "Finite grid game from an interval game", false, false, false, true, false},
    };
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("game", opt.game_path, "Game file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
        if (v.outcome) sub->add_option("--outcome", opt.outcome_path, "Outcome file")->check(CLI::ExistingFile);
        if (v.partition) sub->add_option("--partition", opt.partition, "Comma-separated action per state, 1-based");
        if (v.equilibrium) sub->add_option("--equilibrium", opt.equilibrium_path, "Equilibrium file")->check(CLI::ExistingFile);
        if (v.grid) sub->add_option("--grid", opt.grid, "Number of grid states")->check(CLI::Range(2, 4096));
        if (v.budget) sub->add_option("--budget", opt.budget, "Search-node cap for partition enumeration")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return dispatch(verb, opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kUsage;
    } catch (const EquilibriumFormatError& e) {
        std::cerr << "invalid equilibrium: " << e.what() << "\n";
        return kUsage;
    } catch (const AnalysisRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const UnsupportedGame& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    }
}
