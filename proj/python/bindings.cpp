// Python bindings. Games, outcomes and reports cross the boundary as JSON text
// in the same formats the CLI reads and writes; rationals are "p/q" strings.
// Indices are 0-based here, as in the C++ API, except inside file-format JSON.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vdp/commitment.hpp"
#include "vdp/equilibrium.hpp"
#include "vdp/interval.hpp"
#include "vdp/io.hpp"
#include "vdp/lp.hpp"
#include "vdp/smm.hpp"

namespace py = pybind11;
using namespace vdp;
using io::json;

namespace {

Game game_of(const std::string& text) { return io::game_from_json(io::parse_json_text(text, "game")); }

MeanThresholdGame interval_game_of(const std::string& text) {
    return io::interval_game_from_json(io::parse_json_text(text, "interval game"));
}

Outcome outcome_of(const Game& g, const std::string& text) {
    Outcome o = io::outcome_from_json(io::parse_json_text(text, "outcome"));
    validate_outcome(g, o);
    return o;
}

SearchOptions search(std::uint64_t budget) {
    SearchOptions o;
    o.node_budget = budget;
    return o;
}

RationalVector rationals(const std::vector<std::string>& v) {
    RationalVector out;
    for (const auto& s : v) out.push_back(Rational::parse(s));
    return out;
}

std::vector<std::string> strings(const RationalVector& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact solver and verifier for persuasion games with verifiable messages";

    static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
    static py::exception<io::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    static py::exception<AnalysisRefusal> refusal(m, "AnalysisRefusal", PyExc_RuntimeError);
    static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            validation_error(e.what());
        } catch (const io::ParseError& e) {
            parse_error(e.what());
        } catch (const AnalysisRefusal& e) {
            refusal(e.what());
        } catch (const BudgetExceeded& e) {
            budget_error(e.what());
        }
    });

    m.def("validate_game", [](const std::string& game) { return io::game_to_json(game_of(game)).dump(); });

    m.def("solve_commitment", [](const std::string& game) {
        return io::commitment_to_json(solve_commitment(game_of(game))).dump();
    });

    m.def("check", [](const std::string& game, const std::string& outcome) {
        Game g = game_of(game);
        Outcome o = outcome_of(g, outcome);
        json out = io::check_report_to_json(check_ic(g, o), check_obedience(g, o));
        out["ex_ante"] = outcome_payoffs(g, o).ex_ante.str();
        return out.dump();
    });

    m.def(
        "decide_commitment_in_equilibrium",
        [](const std::string& game, std::uint64_t budget) {
            return io::verdict_to_json(decide_commitment_in_equilibrium(game_of(game), search(budget))).dump();
        },
        py::arg("game"), py::arg("budget") = SearchOptions{}.node_budget);

    m.def(
        "enumerate_equilibrium_outcomes",
        [](const std::string& game, std::uint64_t budget) {
            std::vector<std::vector<std::size_t>> out;
            for (auto& p : enumerate_equilibrium_outcomes(game_of(game), search(budget))) out.push_back(p.assign);
            return out;
        },
        py::arg("game"), py::arg("budget") = SearchOptions{}.node_budget);

    m.def("construct_recommendation_equilibrium", [](const std::string& game, const std::vector<std::size_t>& partition) {
        Game g = game_of(game);
        Partition p{partition};
        validate_partition(g, p);
        return io::equilibrium_to_json(construct_recommendation_equilibrium(g, p)).dump();
    });

    m.def("verify_equilibrium", [](const std::string& game, const std::string& equilibrium) {
        Game g = game_of(game);
        Equilibrium e = io::equilibrium_from_json(io::parse_json_text(equilibrium, "equilibrium"));
        return io::verification_to_json(verify_equilibrium(g, e)).dump();
    });

    m.def("smm", [](const std::string& game, const std::string& outcome) {
        Game g = game_of(game);
        SmmEquilibrium e = construct_smm_equilibrium(g, outcome_of(g, outcome));
        json out = io::smm_equilibrium_to_json(e);
        out["verification"] = io::smm_verification_to_json(verify_smm_equilibrium(g, e));
        return out.dump();
    });

    m.def("evaluate_interval_outcome", [](const std::string& game, const std::string& outcome) {
        MeanThresholdGame g = interval_game_of(game);
        IntervalOutcome o = io::interval_outcome_from_json(io::parse_json_text(outcome, "interval outcome"));
        return io::interval_evaluation_to_json(evaluate_interval_outcome(g, o)).dump();
    });

    m.def("purify_interval_outcome", [](const std::string& game, const std::string& outcome) {
        MeanThresholdGame g = interval_game_of(game);
        IntervalOutcome o = io::interval_outcome_from_json(io::parse_json_text(outcome, "interval outcome"));
        return io::interval_outcome_to_json(purify_interval_outcome(g, o)).dump();
    });

    m.def("discretize_game", [](const std::string& game, std::size_t n) {
        return io::game_to_json(discretize_game(interval_game_of(game), n)).dump();
    });

    // Maximize c.x subject to rows (sense) rhs, x >= 0; senses are "<=", "=", ">=".
    m.def("lp_solve", [](const std::vector<std::string>& objective, const std::vector<std::vector<std::string>>& rows,
                         const std::vector<std::string>& senses, const std::vector<std::string>& rhs) {
        LinearProgram lp(objective.size());
        lp.objective = rationals(objective);
        if (rows.size() != senses.size() || rows.size() != rhs.size())
            throw LpValidationError("rows, senses and rhs must have equal length");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Sense s;
            if (senses[i] == "<=") s = Sense::LessEqual;
            else if (senses[i] == "=") s = Sense::Equal;
            else if (senses[i] == ">=") s = Sense::GreaterEqual;
            else throw LpValidationError("unknown sense '" + senses[i] + "'");
            lp.add_row(rationals(rows[i]), s, Rational::parse(rhs[i]));
        }
        LpResult r = lp_solve(lp);
        py::dict out;
        out["status"] = to_string(r.status);
        out["value"] = r.optimal() ? py::object(py::str(r.value.str())) : py::object(py::none());
        out["solution"] = strings(r.solution);
        return out;
    });
}
