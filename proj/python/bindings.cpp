#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "thermoecon/axioms.hpp"
#include "thermoecon/dynamics.hpp"
#include "thermoecon/economy.hpp"
#include "thermoecon/errors.hpp"
#include "thermoecon/partition.hpp"
#include "thermoecon/scenario.hpp"
#include "thermoecon/serialization.hpp"

namespace py = pybind11;
using namespace thermoecon;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

json py_str_to_json(const std::string& text) {
  return json::parse(text);
}

UtilitySpec utility_from_py(const py::dict& d) {
  return utility_from_json(py_str_to_json(py::str(py::module_::import("json").attr("dumps")(d))),
                           "/utility");
}

py::dict macro_to_dict(const Economy* eco, const MacroState& macro) {
  py::dict totals;
  for (const auto& [key, total] : macro.totals) {
    const std::string label =
        eco ? key_label(*eco, key)
            : ("g" + std::to_string(key.good));
    totals[py::str(label)] = total;
  }
  py::dict out;
  out["agent_count"] = macro.agent_count;
  out["totals"] = totals;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exchange-economy dynamics and entropy toolkit";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<SamplingError>(m, "SamplingError");
  py::register_exception<NumericError>(m, "NumericError");

  py::class_<GoodVector>(m, "GoodVector")
      .def(py::init([](const std::vector<double>& amounts) {
        GoodVector v;
        v.amounts = amounts;
        return v;
      }))
      .def_readwrite("amounts", &GoodVector::amounts);

  py::class_<Economy>(m, "Economy")
      .def_static("from_json",
                  [](const std::string& text) {
                    return economy_from_json(py_str_to_json(text), "/economy");
                  })
      .def("to_json", [](const Economy& eco) { return economy_to_json(eco).dump(); })
      .def_property_readonly("agent_count", &Economy::agent_count)
      .def_property_readonly("good_count", [](const Economy& e) { return e.good_count; })
      .def_property_readonly("simple", &Economy::simple);

  py::class_<MicroState>(m, "MicroState")
      .def(py::init([](const std::vector<std::vector<double>>& possessions) {
        MicroState s;
        for (const auto& row : possessions) {
          GoodVector p;
          p.amounts = row;
          s.possessions.push_back(std::move(p));
        }
        return s;
      }))
      .def_property_readonly("possessions", [](const MicroState& s) {
        std::vector<std::vector<double>> out;
        for (const auto& p : s.possessions) out.push_back(p.amounts);
        return out;
      });

  py::class_<MacroState>(m, "MacroState")
      .def_property_readonly("agent_count", [](const MacroState& m_) { return m_.agent_count; })
      .def("totals", [](const MacroState& macro) { return macro_to_dict(nullptr, macro); })
      .def("totals_for", [](const MacroState& macro, const Economy& eco) {
        return macro_to_dict(&eco, macro);
      });

  py::class_<CanonicalPoint>(m, "CanonicalPoint")
      .def(py::init([](const std::vector<double>& values) { return CanonicalPoint{values}; }))
      .def_readonly("values", &CanonicalPoint::values)
      .def_property_readonly("beta", &CanonicalPoint::beta);

  py::class_<EntropyModel>(m, "EntropyModel")
      .def_static("from_economy", &EntropyModel::from_economy)
      .def_static("cobb_douglas", &EntropyModel::cobb_douglas)
      .def_static("substitutes", &EntropyModel::substitutes)
      .def_static("complements", &EntropyModel::complements)
      .def_property_readonly("family", &EntropyModel::family_name)
      .def_property_readonly("agent_count", &EntropyModel::agent_count)
      .def_property_readonly("good_count", &EntropyModel::good_count);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("seed", &Trajectory::seed)
      .def_readonly("event_count", &Trajectory::event_count)
      .def_readonly("final_time", &Trajectory::final_time)
      .def_readonly("final_state", &Trajectory::final_state)
      .def_readonly("final_pot", &Trajectory::final_pot)
      .def_readonly("sample_times", &Trajectory::sample_times)
      .def_readonly("sample_part_totals", &Trajectory::sample_part_totals)
      .def_readonly("pot_series", &Trajectory::pot_series)
      .def_readonly("sample_agent_money", &Trajectory::sample_agent_money)
      .def("mean_key_totals", &Trajectory::mean_key_totals)
      .def("summary", [](const Trajectory& traj, const Economy& eco) {
        return json_to_py(trajectory_summary_json(eco, traj));
      });

  // economy-core operations
  m.def("log_utility", [](const py::dict& utility, const std::vector<double>& amounts) {
    GoodVector p;
    p.amounts = amounts;
    return log_utility(utility_from_py(utility), p);
  });
  m.def("conserved_quantities", [](const Economy& eco, const MicroState& state) {
    py::list out;
    for (const auto& q : conserved_quantities(eco, state)) {
      py::dict entry;
      entry["good"] = q.key.good;
      entry["parts"] = q.key.parts;
      entry["label"] = key_label(eco, q.key);
      entry["total"] = q.total;
      out.append(entry);
    }
    return out;
  });
  m.def("macro_state_of", &macro_state_of);
  m.def("set_contact", &set_contact, py::arg("economy"), py::arg("part_a"), py::arg("part_b"),
        py::arg("goods"), py::arg("enabled"));
  m.def("scale_economy", &scale_economy);
  m.def("equal_split_state", [](const Economy& eco, const std::vector<double>& totals) {
    GoodVector v;
    v.amounts = totals;
    return equal_split_state(eco, v);
  });
  m.def("stationary_sample", &stationary_sample_cobb_douglas);

  // dynamics
  const auto make_options = [](std::uint64_t events, py::object burn_in, py::object thin,
                               bool record_agent_money) {
    SimOptions o;
    o.max_events = events;
    if (!burn_in.is_none()) o.burn_in_events = burn_in.cast<std::uint64_t>();
    if (!thin.is_none()) o.thin_events = thin.cast<std::uint64_t>();
    o.record_agent_money = record_agent_money;
    return o;
  };
  m.def(
      "simulate",
      [make_options](const Economy& eco, const MicroState& state, std::uint64_t events,
                     std::uint64_t seed, py::object burn_in, py::object thin,
                     bool record_agent_money) {
        return simulate(eco, state, make_options(events, burn_in, thin, record_agent_money), seed);
      },
      py::arg("economy"), py::arg("state"), py::arg("events"), py::arg("seed"),
      py::arg("burn_in") = py::none(), py::arg("thin") = py::none(),
      py::arg("record_agent_money") = false);
  m.def(
      "financial_contact_session",
      [make_options](const Economy& eco, const MicroState& state, double pot,
                     std::uint64_t events, std::uint64_t seed, py::object burn_in,
                     py::object thin) {
        auto result = financial_contact_session(
            eco, state, pot, make_options(events, burn_in, thin, false), seed);
        return py::make_tuple(result.trajectory, result.final_pot);
      },
      py::arg("economy"), py::arg("state"), py::arg("pot"), py::arg("events"), py::arg("seed"),
      py::arg("burn_in") = py::none(), py::arg("thin") = py::none());
  m.def(
      "trading_contact_session",
      [make_options](const Economy& eco, const MicroState& state,
                     const std::map<int, double>& prices, std::uint64_t events,
                     std::uint64_t seed, py::object burn_in, py::object thin) {
        return trading_contact_session(eco, state, prices,
                                       make_options(events, burn_in, thin, false), seed);
      },
      py::arg("economy"), py::arg("state"), py::arg("prices"), py::arg("events"), py::arg("seed"),
      py::arg("burn_in") = py::none(), py::arg("thin") = py::none());
  m.def("sample_budget_line",
        [](const py::dict& utility, double wealth, double price, std::uint64_t seed) {
          Rng rng(seed);
          return sample_budget_line(utility_from_py(utility), wealth, price, rng).amounts;
        });

  // partition
  m.def("single_component_macro", &single_component_macro);
  m.def("log_partition", [](const EntropyModel& model, const MacroState& macro) {
    const auto v = log_partition(model, macro);
    py::dict out;
    out["value"] = v.value;
    out["order"] = v.order == ValueOrder::exact ? "exact" : "extensive";
    if (!v.note.empty()) out["note"] = v.note;
    return out;
  });
  m.def("coolness", &coolness);
  m.def("good_values", [](const EntropyModel& model, const MacroState& macro) {
    const auto gv = good_values(model, macro);
    py::dict out;
    out["beta"] = gv.beta;
    out["nu"] = gv.nu;
    out["price"] = gv.price;
    return out;
  });
  m.def("free_energy", [](const EntropyModel& model, const CanonicalPoint& point) {
    const auto f = free_energy(model, point);
    py::dict out;
    out["value"] = f.value;
    if (!f.note.empty()) out["note"] = f.note;
    return out;
  });
  m.def("equilibrium_amounts", &equilibrium_amounts);
  m.def("legendre_entropy", [](const EntropyModel& model, const MacroState& macro) {
    const auto result = legendre_entropy(model, macro);
    py::dict out;
    out["entropy"] = result.entropy.value;
    out["order"] = "extensive";
    out["minimizer"] = result.minimizer.values;
    out["iterations"] = result.iterations;
    out["grad_inf_norm"] = result.grad_inf_norm;
    return out;
  });
  m.def("thermo_integrate_log_z", &thermo_integrate_log_z);
  m.def("estimate_coolness_from_pot", [](const std::vector<double>& series) {
    const auto est = estimate_coolness_from_pot(series);
    py::dict out;
    out["beta"] = est.beta;
    out["stderr"] = est.stderr_beta;
    out["effective_samples"] = est.effective_samples;
    return out;
  });

  // axioms
  m.def("accessible", [](const EntropyModel& model, const MacroState& x, const MacroState& y) {
    switch (accessible({model, x}, {model, y})) {
      case Accessibility::forward: return "forward";
      case Accessibility::backward: return "backward";
      case Accessibility::both: return "both";
      default: return "neither";
    }
  });
  m.def("plan_transition",
        [](const EntropyModel& model, const MacroState& x, const MacroState& y,
           const Economy& eco) {
          return json_to_py(plan_to_json(eco, plan_transition({model, x}, {model, y})));
        });
  m.def("financial_equilibrium",
        [](const EntropyModel& ma, const MacroState& a, const EntropyModel& mb,
           const MacroState& b) {
          const auto v = financial_equilibrium({ma, a}, {mb, b});
          py::dict out;
          out["equilibrium"] = v.equilibrium;
          out["beta_a"] = v.beta_a;
          out["beta_b"] = v.beta_b;
          out["flow_sign"] = v.flow_sign;
          return out;
        });
  m.def("match_money",
        [](const EntropyModel& ma, const MacroState& a, const EntropyModel& mb,
           const MacroState& b) {
          const auto r = match_money({ma, a}, {mb, b});
          py::dict out;
          out["amount"] = r.amount;
          out["beta"] = r.beta;
          out["side"] = r.side == MatchMoneyResult::Side::add_to_a   ? "add_to_a"
                        : r.side == MatchMoneyResult::Side::add_to_b ? "add_to_b"
                                                                     : "already_equal";
          return out;
        });
  m.def("flanking_states",
        [](const EntropyModel& model, const MacroState& x, double money) {
          const auto r = flanking_states({model, x}, money);
          py::dict out;
          out["lower"] = r.lower;
          out["upper"] = r.upper;
          out["beta"] = r.beta;
          out["log_z_lower"] = r.log_z_lower;
          out["log_z_x"] = r.log_z_x;
          out["log_z_upper"] = r.log_z_upper;
          return out;
        });
  m.def("calibrated_entropy",
        [](const EntropyModel& model, const MacroState& x, const MacroState& x0,
           const MacroState& x1) {
          return calibrated_entropy({model, x}, {model, x0}, {model, x1});
        });
  m.def(
      "run_axiom_suite",
      [](std::uint64_t seed, int agents, std::uint64_t session_events) {
        AxiomSuiteConfig config;
        config.seed = seed;
        config.n_agents = agents;
        config.session_events = session_events;
        return json_to_py(axiom_report_to_json(run_axiom_suite(config)));
      },
      py::arg("seed") = 20260808, py::arg("agents") = 50, py::arg("session_events") = 30000);

  // scenario runner
  m.def("run_scenario", [](const std::string& config_text) {
    const ScenarioConfig config = ScenarioConfig::from_json(py_str_to_json(config_text));
    const ScenarioResult result = run_scenario(config);
    return py::make_tuple(json_to_py(result.report), result.csv);
  });
}
