#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "thermoecon/types.hpp"

namespace thermoecon {

// Partition of the agents into parts plus, per part pair, the set of goods
// exchangeable across that pair. Within a part every good is tradable.
struct ContactStructure {
  std::vector<std::vector<int>> parts;
  std::map<std::pair<int, int>, std::set<int>> tradable;  // key (a, b) with a < b

  int part_count() const { return static_cast<int>(parts.size()); }
  const std::set<int>* tradable_between(int part_a, int part_b) const;
};

struct AllToAll {
  double rate = 1.0;
};
struct Ring {
  double rate = 1.0;
};
struct ExplicitRates {
  std::vector<std::vector<double>> k;  // symmetric, zero diagonal
};
using EncounterSpec = std::variant<AllToAll, Ring, ExplicitRates>;

struct Economy {
  int good_count = 0;
  std::vector<std::string> good_names;  // labels for reports; [0] = money
  std::vector<Agent> agents;
  ContactStructure structure;
  EncounterSpec encounters{AllToAll{}};
  std::vector<double> trader_rates;    // K_i, one per agent
  std::optional<int> money_component;  // index into flow_components(good 0); set => "simple"

  int agent_count() const { return static_cast<int>(agents.size()); }
  double encounter_rate(int i, int j) const;
  bool simple() const { return money_component.has_value(); }
};

// One conserved quantity is the total of one good over one connected
// component of that good's flow graph on parts.
struct ConservedKey {
  int good = 0;
  std::vector<int> parts;  // sorted part indices

  auto operator<=>(const ConservedKey&) const = default;
};

struct ConservedQuantity {
  ConservedKey key;
  double total = 0.0;
};

struct MicroState {
  std::vector<GoodVector> possessions;  // indexed by agent id
};

struct MacroState {
  std::map<ConservedKey, double> totals;
  int agent_count = 0;
};

// Connected components (as sorted part-index lists) of the flow graph of
// one good: parts joined when the good is in their tradable set.
std::vector<std::vector<int>> flow_components(const Economy& eco, int good);

std::vector<ConservedKey> conserved_keys(const Economy& eco);

std::vector<ConservedQuantity> conserved_quantities(const Economy& eco, const MicroState& state);

// Totals recomputed from possessions; throws std::invalid_argument on
// negative amounts or a state of the wrong shape.
MacroState macro_state_of(const Economy& eco, const MicroState& state);

// Returns a copy with the tradable set for (part_a, part_b) updated.
// Conserved keys change; possessions do not.
Economy set_contact(Economy eco, int part_a, int part_b, const std::set<int>& goods, bool enabled);

// round(lambda * N) agents drawn by round-robin replication of each part's
// utility population; encounter rates rebuilt from the topology rule.
Economy scale_economy(const Economy& eco, double lambda);

void validate_economy(const Economy& eco);

// Human-readable key label, e.g. "money[0]" or "g1[0+1]".
std::string key_label(const Economy& eco, const ConservedKey& key);

// Every agent gets totals / N; exact up to division rounding.
MicroState equal_split_state(const Economy& eco, const GoodVector& totals);

// Single-part economy with a shared utility spec, all-to-all encounters.
Economy make_basic_economy(int n_agents, int good_count, const UtilitySpec& utility,
                           double encounter_rate = 1.0, double trader_rate = 1.0);

// As above but with one spec per agent.
Economy make_population_economy(const std::vector<UtilitySpec>& population, int good_count,
                                double encounter_rate = 1.0, double trader_rate = 1.0);

std::vector<int> agent_part_index(const Economy& eco);

}  // namespace thermoecon
