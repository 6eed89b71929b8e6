#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermoecon/dynamics.hpp"
#include "thermoecon/economy.hpp"

namespace thermoecon {

struct ActionSpec {
  enum class Kind { simulate, financial_contact, trading_contact, make_contact, break_contact };
  Kind kind = Kind::simulate;
  std::uint64_t events = 0;
  double pot = 0.0;                 // financial_contact
  std::map<int, double> prices;     // trading_contact
  int part_a = 0, part_b = 1;       // contact changes
  std::set<int> goods;              // contact changes
};

struct EstimatorSpec {
  std::optional<std::uint64_t> burn_in_events;
  std::optional<std::uint64_t> thin_events;
  int replicas = 1;
};

struct OutputSpec {
  std::string dir = ".";
  std::string format = "both";  // json | csv | both
  std::string prefix = "scenario";
};

struct ScenarioConfig {
  std::uint64_t seed = 0;  // mandatory: no implicit entropy source
  Economy economy;
  MicroState initial;
  std::vector<ActionSpec> actions;
  EstimatorSpec estimator;
  OutputSpec output;
  nlohmann::json raw;  // fingerprinted into the report

  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig from_file(const std::string& path);
};

struct ScenarioResult {
  nlohmann::json report;
  std::string csv;

  // Written to <dir>/<prefix>.report.json and <prefix>.series.csv.
  void write(const OutputSpec& output) const;
};

// Executes the action script sequentially, recording the macro state and
// analytic log Z after every step. Deterministic given (config, seed).
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace thermoecon
