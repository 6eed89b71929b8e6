#pragma once

#include <string>

#include <json.hpp>

#include "thermoecon/axioms.hpp"
#include "thermoecon/dynamics.hpp"
#include "thermoecon/economy.hpp"
#include "thermoecon/partition.hpp"

namespace thermoecon {

// Economy schema: goods, agents (or a population shorthand), parts,
// tradable map, encounter topology by name, trader rates, money component.
nlohmann::json economy_to_json(const Economy& eco);
Economy economy_from_json(const nlohmann::json& j, const std::string& path = "/economy");

nlohmann::json utility_to_json(const UtilitySpec& spec);
UtilitySpec utility_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json micro_state_to_json(const MicroState& state);
MicroState micro_state_from_json(const nlohmann::json& j, const std::string& path = "/initial");

nlohmann::json macro_state_to_json(const Economy& eco, const MacroState& macro);
MacroState macro_state_from_json(const Economy& eco, const nlohmann::json& j,
                                 const std::string& path = "/macro");

// Analytic results as records {model, macro, quantity, value, order, note, ...}.
nlohmann::json quantity_record(const EntropyModel& model, const Economy& eco,
                               const MacroState& macro, const std::string& quantity,
                               const TaggedValue& value);

nlohmann::json trajectory_summary_json(const Economy& eco, const Trajectory& traj);
std::string trajectory_csv(const Economy& eco, const Trajectory& traj, int step_index = 0);
std::string trajectory_csv_header(const Economy& eco);

nlohmann::json axiom_report_to_json(const AxiomReport& report);
void print_axiom_table(const AxiomReport& report, std::ostream& out);

nlohmann::json plan_to_json(const Economy& eco, const TransitionPlan& plan);

// --- field access with ConfigError paths -----------------------------------

const nlohmann::json& require_field(const nlohmann::json& j, const char* name,
                                    const std::string& path);
double require_number(const nlohmann::json& j, const char* name, const std::string& path);
std::uint64_t require_u64(const nlohmann::json& j, const char* name, const std::string& path);

}  // namespace thermoecon
