#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "vdp/commitment.hpp"
#include "vdp/equilibrium.hpp"
#include "vdp/game.hpp"
#include "vdp/interval.hpp"
#include "vdp/smm.hpp"

namespace vdp::io {

using nlohmann::json;

/// Malformed file contents; the message names the offending field or line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& origin);

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& field);

// All indices in files are 1-based.
json game_to_json(const Game& g);
Game game_from_json(const json& j);

json outcome_to_json(const Outcome& o);
Outcome outcome_from_json(const json& j);

json partition_to_json(const Partition& p);
Partition partition_from_json(const json& j);
/// "1,2,2" -> {0,1,1}
Partition parse_partition_list(const std::string& text);

json interval_game_to_json(const MeanThresholdGame& g);
MeanThresholdGame interval_game_from_json(const json& j);

json interval_outcome_to_json(const IntervalOutcome& o);
IntervalOutcome interval_outcome_from_json(const json& j);

json message_to_json(const Message& m);
Message message_from_json(const json& j, const std::string& field);

json equilibrium_to_json(const Equilibrium& e);
Equilibrium equilibrium_from_json(const json& j);

json verification_to_json(const VerificationReport& r);
json smm_equilibrium_to_json(const SmmEquilibrium& e);
json smm_verification_to_json(const SmmVerificationReport& r);
json commitment_to_json(const CommitmentSolution& s);
json verdict_to_json(const EquilibriumCommitmentVerdict& v);
json check_report_to_json(const CheckReport& ic, const CheckReport& obedience);
json interval_evaluation_to_json(const IntervalEvaluation& ev);

using AnyGame = std::variant<Game, MeanThresholdGame>;

/// Detects the format by the presence of "cutoffs" or "states".
AnyGame parse_game_file(const std::filesystem::path& path);
AnyGame parse_game_json(const json& j);

}  // namespace vdp::io
