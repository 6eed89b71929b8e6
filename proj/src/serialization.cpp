#include "thermoecon/serialization.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "thermoecon/errors.hpp"

namespace thermoecon {

using nlohmann::json;

const json& require_field(const json& j, const char* name, const std::string& path) {
  if (!j.is_object() || !j.contains(name)) throw ConfigError(path + "/" + name, "missing field");
  return j.at(name);
}

double require_number(const json& j, const char* name, const std::string& path) {
  const json& field = require_field(j, name, path);
  if (!field.is_number()) throw ConfigError(path + "/" + name, "expected a number");
  return field.get<double>();
}

std::uint64_t require_u64(const json& j, const char* name, const std::string& path) {
  const json& field = require_field(j, name, path);
  if (!field.is_number_unsigned() && !field.is_number_integer())
    throw ConfigError(path + "/" + name, "expected an unsigned integer");
  return field.get<std::uint64_t>();
}

json utility_to_json(const UtilitySpec& spec) {
  return std::visit(
      [](const auto& u) -> json {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, CobbDouglas>) {
          return {{"type", "cobb_douglas"}, {"exponents", u.exponents}};
        } else if constexpr (std::is_same_v<T, PerfectSubstitutes>) {
          return {{"type", "substitutes"}, {"alpha", u.alpha}, {"goods", u.goods}};
        } else {
          return {{"type", "complements"}, {"alpha", u.alpha}, {"goods", u.goods}};
        }
      },
      spec);
}

UtilitySpec utility_from_json(const json& j, const std::string& path) {
  const json& type = require_field(j, "type", path);
  if (!type.is_string()) throw ConfigError(path + "/type", "expected a string");
  const std::string name = type.get<std::string>();
  if (name == "cobb_douglas") {
    const json& exps = require_field(j, "exponents", path);
    if (!exps.is_array() || exps.empty())
      throw ConfigError(path + "/exponents", "expected a non-empty array");
    CobbDouglas cd;
    for (const auto& e : exps) {
      if (!e.is_number()) throw ConfigError(path + "/exponents", "expected numbers");
      cd.exponents.push_back(e.get<double>());
    }
    return cd;
  }
  const auto read_pair = [&](auto proto) -> UtilitySpec {
    proto.alpha = require_number(j, "alpha", path);
    if (j.contains("goods")) {
      const json& goods = j.at("goods");
      if (!goods.is_array() || goods.size() != 2)
        throw ConfigError(path + "/goods", "expected a pair of good indices");
      proto.goods = {goods[0].get<int>(), goods[1].get<int>()};
    }
    return proto;
  };
  if (name == "substitutes") return read_pair(PerfectSubstitutes{});
  if (name == "complements") return read_pair(Complements{});
  throw ConfigError(path + "/type", "unknown utility family '" + name + "'");
}

json economy_to_json(const Economy& eco) {
  json j;
  j["goods"] = eco.good_names;
  json agents = json::array();
  for (const auto& a : eco.agents)
    agents.push_back({{"id", a.id}, {"utility", utility_to_json(a.utility)}});
  j["agents"] = agents;
  j["parts"] = eco.structure.parts;
  json tradable = json::array();
  for (const auto& [pair, goods] : eco.structure.tradable)
    tradable.push_back({{"parts", {pair.first, pair.second}}, {"goods", goods}});
  j["tradable"] = tradable;
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, AllToAll>) {
          j["encounters"] = {{"topology", "all_to_all"}, {"rate", spec.rate}};
        } else if constexpr (std::is_same_v<T, Ring>) {
          j["encounters"] = {{"topology", "ring"}, {"rate", spec.rate}};
        } else {
          j["encounters"] = {{"topology", "explicit"}, {"matrix", spec.k}};
        }
      },
      eco.encounters);
  j["trader_rates"] = {{"values", eco.trader_rates}};
  if (eco.money_component) j["money_component"] = *eco.money_component;
  return j;
}

Economy economy_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  Economy eco;

  const json& goods = require_field(j, "goods", path);
  if (goods.is_number_integer()) {
    eco.good_count = goods.get<int>();
    eco.good_names.push_back("money");
    for (int t = 1; t < eco.good_count; ++t) eco.good_names.push_back("g" + std::to_string(t));
  } else if (goods.is_array() && !goods.empty()) {
    for (const auto& g : goods) eco.good_names.push_back(g.get<std::string>());
    eco.good_count = static_cast<int>(eco.good_names.size());
  } else {
    throw ConfigError(path + "/goods", "expected a count or a list of names");
  }

  if (j.contains("agents")) {
    const json& agents = j.at("agents");
    if (!agents.is_array() || agents.empty())
      throw ConfigError(path + "/agents", "expected a non-empty array");
    int idx = 0;
    for (const auto& a : agents) {
      const std::string apath = path + "/agents/" + std::to_string(idx);
      Agent agent;
      agent.id = a.contains("id") ? a.at("id").get<int>() : idx;
      agent.utility = utility_from_json(require_field(a, "utility", apath), apath + "/utility");
      eco.agents.push_back(std::move(agent));
      ++idx;
    }
  } else if (j.contains("population")) {
    const json& pop = j.at("population");
    const auto count = static_cast<int>(require_u64(pop, "count", path + "/population"));
    if (count < 1) throw ConfigError(path + "/population/count", "expected a positive count");
    const auto utility =
        utility_from_json(require_field(pop, "utility", path + "/population"),
                          path + "/population/utility");
    for (int i = 0; i < count; ++i) eco.agents.push_back({i, utility});
  } else {
    throw ConfigError(path, "needs either 'agents' or 'population'");
  }
  const int n = eco.agent_count();

  if (j.contains("parts")) {
    const json& parts = j.at("parts");
    if (!parts.is_array() || parts.empty())
      throw ConfigError(path + "/parts", "expected a non-empty array of id lists");
    for (const auto& part : parts) eco.structure.parts.push_back(part.get<std::vector<int>>());
  } else {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    eco.structure.parts.push_back(std::move(all));
  }

  if (j.contains("tradable")) {
    int idx = 0;
    for (const auto& entry : j.at("tradable")) {
      const std::string tpath = path + "/tradable/" + std::to_string(idx++);
      const json& pair = require_field(entry, "parts", tpath);
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError(tpath + "/parts", "expected a pair of part ids");
      int a = pair[0].get<int>(), b = pair[1].get<int>();
      if (a > b) std::swap(a, b);
      const json& tgoods = require_field(entry, "goods", tpath);
      std::set<int> goods_set(tgoods.begin(), tgoods.end());
      eco.structure.tradable[{a, b}] = std::move(goods_set);
    }
  }

  if (j.contains("encounters")) {
    const json& enc = j.at("encounters");
    const std::string topology =
        require_field(enc, "topology", path + "/encounters").get<std::string>();
    if (topology == "all_to_all") {
      eco.encounters = AllToAll{enc.value("rate", 1.0)};
    } else if (topology == "ring") {
      eco.encounters = Ring{enc.value("rate", 1.0)};
    } else if (topology == "explicit") {
      ExplicitRates rates;
      rates.k = require_field(enc, "matrix", path + "/encounters")
                    .get<std::vector<std::vector<double>>>();
      eco.encounters = std::move(rates);
    } else {
      throw ConfigError(path + "/encounters/topology", "unknown topology '" + topology + "'");
    }
  }

  if (j.contains("trader_rates")) {
    const json& tr = j.at("trader_rates");
    if (tr.is_number()) {
      eco.trader_rates.assign(n, tr.get<double>());
    } else if (tr.contains("uniform")) {
      eco.trader_rates.assign(n, tr.at("uniform").get<double>());
    } else if (tr.contains("values")) {
      eco.trader_rates = tr.at("values").get<std::vector<double>>();
    } else {
      throw ConfigError(path + "/trader_rates", "expected a number, 'uniform' or 'values'");
    }
  } else {
    eco.trader_rates.assign(n, 1.0);
  }

  if (j.contains("money_component")) eco.money_component = j.at("money_component").get<int>();
  else if (flow_components(eco, 0).size() == 1) eco.money_component = 0;

  try {
    validate_economy(eco);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path, err.what());
  }
  return eco;
}

json micro_state_to_json(const MicroState& state) {
  json possessions = json::array();
  for (const auto& p : state.possessions) possessions.push_back(p.amounts);
  return {{"possessions", possessions}};
}

MicroState micro_state_from_json(const json& j, const std::string& path) {
  const json& poss = require_field(j, "possessions", path);
  if (!poss.is_array() || poss.empty())
    throw ConfigError(path + "/possessions", "expected a non-empty array of vectors");
  MicroState state;
  for (const auto& row : poss) {
    GoodVector p;
    p.amounts = row.get<std::vector<double>>();
    state.possessions.push_back(std::move(p));
  }
  return state;
}

json macro_state_to_json(const Economy& eco, const MacroState& macro) {
  json totals = json::array();
  for (const auto& [key, total] : macro.totals)
    totals.push_back({{"good", key.good},
                      {"parts", key.parts},
                      {"label", key_label(eco, key)},
                      {"total", total}});
  return {{"agent_count", macro.agent_count}, {"totals", totals}};
}

MacroState macro_state_from_json(const Economy& eco, const json& j, const std::string& path) {
  MacroState macro;
  macro.agent_count = eco.agent_count();
  const auto keys = conserved_keys(eco);
  const json& totals = require_field(j, "totals", path);
  if (totals.is_object()) {
    // By good name; single flow component per good.
    for (const auto& [name, value] : totals.items()) {
      int good = -1;
      for (int t = 0; t < eco.good_count; ++t)
        if (eco.good_names[t] == name) good = t;
      if (good < 0) throw ConfigError(path + "/totals/" + name, "unknown good name");
      int matches = 0;
      for (const auto& key : keys)
        if (key.good == good) {
          macro.totals[key] = value.get<double>();
          ++matches;
        }
      if (matches != 1)
        throw ConfigError(path + "/totals/" + name,
                          "good has multiple flow components; use the array form");
    }
  } else if (totals.is_array()) {
    int idx = 0;
    for (const auto& entry : totals) {
      const std::string tpath = path + "/totals/" + std::to_string(idx++);
      ConservedKey key;
      key.good = static_cast<int>(require_u64(entry, "good", tpath));
      key.parts = require_field(entry, "parts", tpath).get<std::vector<int>>();
      macro.totals[key] = require_number(entry, "total", tpath);
    }
  } else {
    throw ConfigError(path + "/totals", "expected an object or an array");
  }
  for (const auto& key : keys)
    if (!macro.totals.count(key))
      throw ConfigError(path + "/totals", "missing total for " + key_label(eco, key));
  return macro;
}

json quantity_record(const EntropyModel& model, const Economy& eco, const MacroState& macro,
                     const std::string& quantity, const TaggedValue& value) {
  json record;
  record["model"] = {{"family", model.family_name()},
                     {"agents", model.agent_count()},
                     {"goods", model.good_count()}};
  record["macro"] = macro_state_to_json(eco, macro);
  record["quantity"] = quantity;
  record["value"] = value.value;
  record["order"] = value.order == ValueOrder::exact ? "exact" : "extensive";
  if (!value.note.empty()) record["note"] = value.note;
  return record;
}

json trajectory_summary_json(const Economy& eco, const Trajectory& traj) {
  json j;
  j["seed"] = traj.seed;
  j["events"] = traj.event_count;
  j["final_time"] = traj.final_time;
  j["samples"] = traj.sample_count();
  json totals = json::array();
  const auto means = traj.mean_key_totals();
  for (std::size_t k = 0; k < traj.total_keys.size(); ++k)
    totals.push_back(
        {{"label", key_label(eco, traj.total_keys[k])}, {"mean", means[k]}});
  j["mean_totals"] = totals;
  json money = json::array();
  for (const auto& m : traj.agent_money_moments)
    money.push_back({{"mean", m.mean}, {"sd", m.stddev()}});
  j["agent_money"] = money;
  if (!traj.pot_series.empty()) {
    RunningMoments pot;
    for (double p : traj.pot_series) pot.add(p);
    j["pot"] = {{"mean", pot.mean}, {"sd", pot.stddev()}, {"final", traj.final_pot}};
  }
  return j;
}

std::string trajectory_csv_header(const Economy& eco) {
  std::ostringstream out;
  out << "step,time,event";
  const int np = eco.structure.part_count();
  for (int t = 0; t < eco.good_count; ++t)
    for (int p = 0; p < np; ++p)
      out << "," << (t < static_cast<int>(eco.good_names.size()) ? eco.good_names[t]
                                                                 : "g" + std::to_string(t))
          << ".part" << p;
  out << ",pot\n";
  return out.str();
}

std::string trajectory_csv(const Economy& /*eco*/, const Trajectory& traj, int step_index) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t row = 0; row < traj.sample_count(); ++row) {
    out << step_index << "," << traj.sample_times[row] << "," << traj.sample_event_indices[row];
    for (double v : traj.sample_part_totals[row]) out << "," << v;
    out << "," << (row < traj.pot_series.size() ? traj.pot_series[row] : 0.0) << "\n";
  }
  return out.str();
}

json axiom_report_to_json(const AxiomReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry{{"id", c.id},
               {"context", c.context},
               {"tolerance", c.tolerance},
               {"verdict", c.pass ? "pass" : "fail"}};
    entry["measured"] = c.measured;
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
  }
  return {{"seed", report.seed}, {"all_pass", report.all_pass()}, {"checks", checks}};
}

void print_axiom_table(const AxiomReport& report, std::ostream& out) {
  out << std::left;
  for (const auto& c : report.checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << std::setw(12) << c.id << c.context;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << (report.all_pass() ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
}

json plan_to_json(const Economy& eco, const TransitionPlan& plan) {
  json steps = json::array();
  for (const auto& step : plan.steps) {
    json s;
    switch (step.kind) {
      case TraderAction::Kind::add_money:
        s["action"] = "add_money";
        s["amount"] = step.amount;
        break;
      case TraderAction::Kind::trade_at_price:
        s["action"] = "trade_at_price";
        s["price"] = step.price;
        break;
      case TraderAction::Kind::make_contact:
        s["action"] = "make_contact";
        break;
      case TraderAction::Kind::break_contact:
        s["action"] = "break_contact";
        break;
    }
    s["target"] = macro_state_to_json(eco, step.target);
    s["expected_delta_log_z"] = step.expected_delta_log_z;
    steps.push_back(std::move(s));
  }
  return {{"steps", steps}, {"total_delta_log_z", plan.total_delta_log_z}};
}

}  // namespace thermoecon
