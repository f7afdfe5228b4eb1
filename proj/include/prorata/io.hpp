#ifndef PRORATA_IO_HPP
#define PRORATA_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "prorata/equilibrium.hpp"
#include "prorata/fairness.hpp"
#include "prorata/model.hpp"
#include "prorata/policy.hpp"

namespace prorata::io {

/// Formats with 12 significant digits (CSV cells, report values).
std::string format_number(double v);

/// Rounds through the 12-significant-digit representation so emitted JSON
/// numbers reparse to the same double.
double quantize(double v);

// Scenario documents round-trip exactly: full-precision doubles.
nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// Parsed solver input: either a raw scenario or a pre-reduced game with
/// explicit d, xi, V (optionally m, lambda_bar, lambda0, uc_shares).
struct GameInput {
    std::optional<Scenario> scenario;
    ReducedGame game;
};
GameInput game_from_json(const nlohmann::json& j);

nlohmann::json equilibrium_to_json(const EquilibriumResult& eq);
nlohmann::json fairness_to_json(const FairnessReport& r);
nlohmann::json policy_to_json(const PolicyAnalysis& a);

std::string effect_name(ThresholdEffect e);
std::string regime_name(Regime r);

// CSV bodies: comma-separated, header row, LF endings.
std::string artists_csv(const ReducedGame& g, const EquilibriumResult& eq);
std::string fairness_csv(const FairnessReport& r);
std::string policy_csv(const PolicyAnalysis& a);

}  // namespace prorata::io

#endif
