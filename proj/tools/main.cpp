// Command-line entry point: scenario runner plus thin wrappers over the
// analytic operations. Exit codes: 0 ok, 1 config error, 2 runtime error,
// 3 check failure (axioms).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermoecon/axioms.hpp"
#include "thermoecon/errors.hpp"
#include "thermoecon/scenario.hpp"
#include "thermoecon/serialization.hpp"

using nlohmann::json;
using namespace thermoecon;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw ConfigError("/", std::string("invalid JSON: ") + err.what());
  }
  return j;
}

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> replicas;
  std::optional<std::string> format;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "JSON config file");
  if (config_required) c->required();
  cmd->add_option("--seed", [&opts](const CLI::results_t& res) {
    try {
      opts.seed = std::stoull(res[0]);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }, "Override the config seed");
  cmd->add_option("--out", [&opts](const CLI::results_t& res) {
    opts.out_dir = res[0];
    return true;
  }, "Output directory");
  cmd->add_option("--replicas", [&opts](const CLI::results_t& res) {
    try {
      opts.replicas = std::stoi(res[0]);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }, "Number of replicas");
  cmd->add_option("--format", [&opts](const CLI::results_t& res) {
    opts.format = res[0];
    return true;
  }, "Report format: json, csv or both");
}

ScenarioConfig scenario_from(const CommonOpts& opts) {
  ScenarioConfig config = ScenarioConfig::from_file(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.out_dir) config.output.dir = *opts.out_dir;
  if (opts.replicas) config.estimator.replicas = *opts.replicas;
  if (opts.format) config.output.format = *opts.format;
  return config;
}

// Loads (economy, macro) for the analytic subcommands.
std::pair<Economy, MacroState> analytic_inputs(const json& j) {
  Economy eco = economy_from_json(require_field(j, "economy", ""), "/economy");
  MacroState macro;
  if (j.contains("macro")) {
    macro = macro_state_from_json(eco, j.at("macro"), "/macro");
  } else if (j.contains("initial")) {
    const MicroState state = micro_state_from_json(j.at("initial"), "/initial");
    macro = macro_state_of(eco, state);
  } else {
    throw ConfigError("/", "needs 'macro' or 'initial'");
  }
  return {std::move(eco), std::move(macro)};
}

int cmd_run(const CommonOpts& opts) {
  const ScenarioConfig config = scenario_from(opts);
  const ScenarioResult result = run_scenario(config);
  result.write(config.output);
  std::cout << result.report.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const CommonOpts& opts, std::uint64_t events) {
  ScenarioConfig config = scenario_from(opts);
  if (events > 0) {
    config.actions.clear();
    ActionSpec action;
    action.kind = ActionSpec::Kind::simulate;
    action.events = events;
    config.actions.push_back(action);
  }
  const ScenarioResult result = run_scenario(config);
  result.write(config.output);
  std::cout << result.report.dump(2) << "\n";
  return 0;
}

int cmd_entropy(const CommonOpts& opts) {
  const json j = load_json(opts.config_path);
  const auto [eco, macro] = analytic_inputs(j);
  const EntropyModel model = EntropyModel::from_economy(eco);
  json records = json::array();
  const TaggedValue log_z = log_partition(model, macro);
  records.push_back(quantity_record(model, eco, macro, "log_z", log_z));

  // Central finite differences of log Z double-check the analytic gradients.
  const auto fd_gradient = [&](const ConservedKey& key) {
    const double p = macro.totals.at(key);
    const double h = 1e-5 * p;
    const double up = log_partition(model, with_total(macro, key, p + h)).value;
    const double down = log_partition(model, with_total(macro, key, p - h)).value;
    return (up - down) / (2.0 * h);
  };
  const double beta = coolness(model, macro);
  json beta_record = quantity_record(model, eco, macro, "beta", {beta, log_z.order, ""});
  if (log_z.order == ValueOrder::exact)
    beta_record["oracle_deviation"] = std::fabs(beta - fd_gradient(model.money_key()));
  records.push_back(std::move(beta_record));
  if (model.one_component_per_good()) {
    const GoodValues gv = good_values(model, macro);
    for (const auto& key : model.keys()) {
      if (key.good == 0) continue;
      json nu_record = quantity_record(model, eco, macro, "nu[" + std::to_string(key.good) + "]",
                                       {gv.nu[key.good], log_z.order, ""});
      if (log_z.order == ValueOrder::exact)
        nu_record["oracle_deviation"] = std::fabs(gv.nu[key.good] - fd_gradient(key));
      records.push_back(std::move(nu_record));
      records.push_back(quantity_record(model, eco, macro,
                                        "price[" + std::to_string(key.good) + "]",
                                        {gv.price[key.good], log_z.order, ""}));
    }
  }
  std::cout << records.dump(2) << "\n";
  return 0;
}

int cmd_legendre(const CommonOpts& opts) {
  const json j = load_json(opts.config_path);
  const auto [eco, macro] = analytic_inputs(j);
  const EntropyModel model = EntropyModel::from_economy(eco);
  const LegendreResult result = legendre_entropy(model, macro);
  const TaggedValue f = free_energy(model, result.minimizer);
  const MacroState eq = equilibrium_amounts(model, result.minimizer);
  json out;
  out["entropy"] = quantity_record(model, eco, macro, "legendre_entropy", result.entropy);
  out["free_energy"] = {{"value", f.value}, {"note", f.note}};
  out["minimizer"] = result.minimizer.values;
  out["equilibrium_amounts"] = macro_state_to_json(eco, eq);
  out["iterations"] = result.iterations;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_axioms(const CommonOpts& opts) {
  AxiomSuiteConfig config;
  if (!opts.config_path.empty()) {
    const json j = load_json(opts.config_path);
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("agents")) config.n_agents = j.at("agents").get<int>();
    if (j.contains("session_events"))
      config.session_events = j.at("session_events").get<std::uint64_t>();
    if (j.contains("adversarial")) config.adversarial = j.at("adversarial").get<bool>();
    if (j.contains("epsilon_price")) config.epsilon_price = j.at("epsilon_price").get<double>();
  }
  if (opts.seed) config.seed = *opts.seed;
  const AxiomReport report = run_axiom_suite(config);
  print_axiom_table(report, std::cout);
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    std::ofstream out(std::filesystem::path(*opts.out_dir) / "axioms.report.json");
    out << axiom_report_to_json(report).dump(2) << "\n";
  }
  return report.all_pass() ? 0 : 3;
}

int cmd_plan(const CommonOpts& opts) {
  const json j = load_json(opts.config_path);
  Economy eco = economy_from_json(require_field(j, "economy", ""), "/economy");
  const EntropyModel model = EntropyModel::from_economy(eco);
  const MacroState from = macro_state_from_json(eco, require_field(j, "from", ""), "/from");
  const MacroState to = macro_state_from_json(eco, require_field(j, "to", ""), "/to");
  const TransitionPlan plan = plan_transition({model, from}, {model, to});
  std::cout << plan_to_json(eco, plan).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exchange-economy simulator and entropy toolkit"};
  app.require_subcommand(1);

  CommonOpts run_opts, sim_opts, entropy_opts, legendre_opts, axioms_opts, plan_opts;
  std::uint64_t sim_events = 0;

  auto* run = app.add_subcommand("run", "Run a scenario config");
  add_common(run, run_opts);
  auto* sim = app.add_subcommand("simulate", "Run the plain dynamics from a config");
  add_common(sim, sim_opts);
  sim->add_option("--events", sim_events, "Override the event horizon");
  auto* entropy = app.add_subcommand("entropy", "Print log Z, beta, nu, prices for a state");
  add_common(entropy, entropy_opts);
  auto* legendre = app.add_subcommand("legendre", "Print F, its gradient and the recovered entropy");
  add_common(legendre, legendre_opts);
  auto* axioms = app.add_subcommand("axioms", "Run the scripted axiom suite");
  add_common(axioms, axioms_opts, false);
  auto* plan = app.add_subcommand("plan", "Print a trader plan between two states");
  add_common(plan, plan_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sim->parsed()) return cmd_simulate(sim_opts, sim_events);
    if (entropy->parsed()) return cmd_entropy(entropy_opts);
    if (legendre->parsed()) return cmd_legendre(legendre_opts);
    if (axioms->parsed()) return cmd_axioms(axioms_opts);
    if (plan->parsed()) return cmd_plan(plan_opts);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
