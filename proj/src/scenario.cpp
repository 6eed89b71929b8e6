#include "thermoecon/scenario.hpp"

#include <filesystem>
#include <future>
#include <fstream>

#include "thermoecon/axioms.hpp"
#include "thermoecon/errors.hpp"
#include "thermoecon/partition.hpp"
#include "thermoecon/rng.hpp"
#include "thermoecon/serialization.hpp"
#include "thermoecon/stats.hpp"

namespace thermoecon {

using nlohmann::json;

namespace {

ActionSpec action_from_json(const json& j, const std::string& path) {
  const std::string type = require_field(j, "type", path).get<std::string>();
  ActionSpec action;
  if (type == "simulate") {
    action.kind = ActionSpec::Kind::simulate;
    action.events = require_u64(j, "events", path);
  } else if (type == "financial_contact") {
    action.kind = ActionSpec::Kind::financial_contact;
    action.events = require_u64(j, "events", path);
    action.pot = require_number(j, "pot", path);
    if (action.pot < 0.0) throw ConfigError(path + "/pot", "pot must be >= 0");
  } else if (type == "trading_contact") {
    action.kind = ActionSpec::Kind::trading_contact;
    action.events = require_u64(j, "events", path);
    const json& prices = require_field(j, "prices", path);
    if (!prices.is_object() || prices.empty())
      throw ConfigError(path + "/prices", "expected {good index: price}");
    for (const auto& [key, value] : prices.items())
      action.prices[std::stoi(key)] = value.get<double>();
  } else if (type == "make_contact" || type == "break_contact") {
    action.kind = type == "make_contact" ? ActionSpec::Kind::make_contact
                                         : ActionSpec::Kind::break_contact;
    const json& parts = require_field(j, "parts", path);
    if (!parts.is_array() || parts.size() != 2)
      throw ConfigError(path + "/parts", "expected a pair of part ids");
    action.part_a = parts[0].get<int>();
    action.part_b = parts[1].get<int>();
    const json& goods = require_field(j, "goods", path);
    action.goods = std::set<int>(goods.begin(), goods.end());
  } else {
    throw ConfigError(path + "/type", "unknown action '" + type + "'");
  }
  return action;
}

// Analytic log Z of the current economy at the current state, when a model
// exists for the population.
std::optional<TaggedValue> try_log_z(const Economy& eco, const MicroState& state) {
  try {
    const EntropyModel model = EntropyModel::from_economy(eco);
    return log_partition(model, macro_state_of(eco, state));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

json run_replica(const ScenarioConfig& config, std::uint64_t seed, std::string* csv_out) {
  Economy eco = config.economy;
  MicroState state = config.initial;

  json steps = json::array();
  std::string csv = trajectory_csv_header(eco);
  int csv_step = 0;

  const auto base_options = [&]() {
    SimOptions options;
    options.burn_in_events = config.estimator.burn_in_events;
    options.thin_events = config.estimator.thin_events;
    return options;
  };

  const auto record_step = [&](const std::string& action, const Trajectory* traj) {
    json step;
    step["index"] = steps.size();
    step["action"] = action;
    const MacroState macro = macro_state_of(eco, state);
    step["macro"] = macro_state_to_json(eco, macro);
    if (const auto log_z = try_log_z(eco, state)) {
      step["log_z"] = {{"value", log_z->value},
                       {"order", log_z->order == ValueOrder::exact ? "exact" : "extensive"}};
      if (!steps.empty() && steps.back().contains("log_z"))
        step["delta_log_z"] =
            log_z->value - steps.back().at("log_z").at("value").get<double>();
    }
    if (traj) {
      step["trajectory"] = trajectory_summary_json(eco, *traj);
      csv += trajectory_csv(eco, *traj, csv_step);
    }
    ++csv_step;
    steps.push_back(std::move(step));
  };

  record_step("initial", nullptr);

  int index = 0;
  for (const auto& action : config.actions) {
    const std::uint64_t step_seed = Rng::derive_seed(seed, 100 + index);
    try {
      switch (action.kind) {
        case ActionSpec::Kind::simulate: {
          auto options = base_options();
          options.max_events = action.events;
          const Trajectory traj = simulate(eco, state, options, step_seed);
          state = traj.final_state;
          record_step("simulate", &traj);
          break;
        }
        case ActionSpec::Kind::financial_contact: {
          auto options = base_options();
          options.max_events = action.events;
          const auto session = financial_contact_session(eco, state, action.pot, options, step_seed);
          state = session.trajectory.final_state;
          record_step("financial_contact", &session.trajectory);
          steps.back()["pot_returned"] = session.final_pot;
          break;
        }
        case ActionSpec::Kind::trading_contact: {
          auto options = base_options();
          options.max_events = action.events;
          const Trajectory traj =
              trading_contact_session(eco, state, action.prices, options, step_seed);
          state = traj.final_state;
          record_step("trading_contact", &traj);
          break;
        }
        case ActionSpec::Kind::make_contact:
          eco = set_contact(eco, action.part_a, action.part_b, action.goods, true);
          record_step("make_contact", nullptr);
          break;
        case ActionSpec::Kind::break_contact:
          eco = set_contact(eco, action.part_a, action.part_b, action.goods, false);
          record_step("break_contact", nullptr);
          break;
      }
    } catch (const std::exception& err) {
      throw std::runtime_error("action " + std::to_string(index) + ": " + err.what());
    }
    ++index;
  }

  if (csv_out) *csv_out = std::move(csv);
  json replica;
  replica["seed"] = seed;
  replica["steps"] = std::move(steps);
  return replica;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("/", "expected an object");
  ScenarioConfig config;
  config.raw = j;
  config.seed = require_u64(j, "seed", "");
  config.economy = economy_from_json(require_field(j, "economy", ""), "/economy");

  const json& initial = require_field(j, "initial", "");
  if (initial.contains("possessions")) {
    config.initial = micro_state_from_json(initial, "/initial");
  } else if (initial.contains("equal_split")) {
    const json& totals = require_field(initial.at("equal_split"), "totals", "/initial/equal_split");
    GoodVector tv;
    tv.amounts = totals.get<std::vector<double>>();
    config.initial = equal_split_state(config.economy, tv);
  } else {
    throw ConfigError("/initial", "needs 'possessions' or 'equal_split'");
  }
  if (static_cast<int>(config.initial.possessions.size()) != config.economy.agent_count())
    throw ConfigError("/initial", "state size != agent count");

  if (j.contains("actions")) {
    int idx = 0;
    for (const auto& a : j.at("actions"))
      config.actions.push_back(action_from_json(a, "/actions/" + std::to_string(idx++)));
  }

  if (j.contains("estimator")) {
    const json& est = j.at("estimator");
    if (est.contains("burn_in_events"))
      config.estimator.burn_in_events = est.at("burn_in_events").get<std::uint64_t>();
    if (est.contains("thin_events"))
      config.estimator.thin_events = est.at("thin_events").get<std::uint64_t>();
    if (est.contains("replicas")) config.estimator.replicas = est.at("replicas").get<int>();
    if (config.estimator.replicas < 1)
      throw ConfigError("/estimator/replicas", "expected >= 1");
  }
  if (j.contains("output")) {
    const json& out = j.at("output");
    config.output.dir = out.value("dir", ".");
    config.output.format = out.value("format", "both");
    config.output.prefix = out.value("prefix", "scenario");
    if (config.output.format != "json" && config.output.format != "csv" &&
        config.output.format != "both")
      throw ConfigError("/output/format", "expected json, csv or both");
  }
  return config;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw ConfigError("/", std::string("invalid JSON: ") + err.what());
  }
  return from_json(j);
}

void ScenarioResult::write(const OutputSpec& output) const {
  std::filesystem::create_directories(output.dir);
  const auto base = std::filesystem::path(output.dir) / output.prefix;
  if (output.format == "json" || output.format == "both") {
    std::ofstream out(base.string() + ".report.json");
    out << report.dump(2) << "\n";
  }
  if (output.format == "csv" || output.format == "both") {
    std::ofstream out(base.string() + ".series.csv");
    out << csv;
  }
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  json report;
  report["version"] = 1;
  report["seed"] = config.seed;
  report["config_hash"] = fnv1a64(config.raw.dump());

  // Replicas fan out across workers; assembly is ordered by replica index.
  const int n = config.estimator.replicas;
  std::vector<json> replica_reports(n);
  std::vector<std::string> replica_csv(n);
  std::vector<std::future<void>> workers;
  workers.reserve(n);
  for (int r = 0; r < n; ++r) {
    const std::uint64_t replica_seed = n == 1 ? config.seed : Rng::derive_seed(config.seed, r);
    workers.push_back(std::async(n > 1 ? std::launch::async : std::launch::deferred,
                                 [&config, replica_seed, r, &replica_reports, &replica_csv]() {
                                   replica_reports[r] =
                                       run_replica(config, replica_seed, &replica_csv[r]);
                                 }));
  }
  for (auto& w : workers) w.get();

  json replicas = json::array();
  for (int r = 0; r < n; ++r) replicas.push_back(std::move(replica_reports[r]));
  report["replicas"] = std::move(replicas);
  return {std::move(report), std::move(replica_csv[0])};
}

}  // namespace thermoecon
