#include "thermoecon/economy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace thermoecon {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Union-find over part indices.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const std::set<int>* ContactStructure::tradable_between(int part_a, int part_b) const {
  const auto it = tradable.find(ordered(part_a, part_b));
  return it == tradable.end() ? nullptr : &it->second;
}

double Economy::encounter_rate(int i, int j) const {
  if (i == j) return 0.0;
  return std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, AllToAll>) {
          return spec.rate;
        } else if constexpr (std::is_same_v<T, Ring>) {
          const int n = agent_count();
          const int d = std::abs(i - j);
          return (d == 1 || d == n - 1) ? spec.rate : 0.0;
        } else {
          return spec.k[i][j];
        }
      },
      encounters);
}

std::vector<int> agent_part_index(const Economy& eco) {
  std::vector<int> part(eco.agent_count(), -1);
  for (int p = 0; p < eco.structure.part_count(); ++p)
    for (int id : eco.structure.parts[p]) part.at(id) = p;
  return part;
}

std::vector<std::vector<int>> flow_components(const Economy& eco, int good) {
  const int np = eco.structure.part_count();
  DisjointSets ds(np);
  for (const auto& [pair, goods] : eco.structure.tradable)
    if (goods.count(good)) ds.unite(pair.first, pair.second);
  std::map<int, std::vector<int>> by_root;
  for (int p = 0; p < np; ++p) by_root[ds.find(p)].push_back(p);
  std::vector<std::vector<int>> components;
  for (auto& [root, parts] : by_root) {
    std::sort(parts.begin(), parts.end());
    components.push_back(std::move(parts));
  }
  // Deterministic order: by smallest member part.
  std::sort(components.begin(), components.end());
  return components;
}

std::vector<ConservedKey> conserved_keys(const Economy& eco) {
  std::vector<ConservedKey> keys;
  for (int t = 0; t < eco.good_count; ++t)
    for (auto& comp : flow_components(eco, t)) keys.push_back({t, comp});
  return keys;
}

std::vector<ConservedQuantity> conserved_quantities(const Economy& eco, const MicroState& state) {
  if (static_cast<int>(state.possessions.size()) != eco.agent_count())
    throw std::invalid_argument("state has wrong number of agents");
  std::vector<ConservedQuantity> out;
  for (int t = 0; t < eco.good_count; ++t) {
    for (auto& comp : flow_components(eco, t)) {
      double total = 0.0;
      for (int p : comp)
        for (int id : eco.structure.parts[p]) total += state.possessions[id][t];
      out.push_back({ConservedKey{t, comp}, total});
    }
  }
  return out;
}

MacroState macro_state_of(const Economy& eco, const MicroState& state) {
  for (const auto& p : state.possessions) {
    if (static_cast<int>(p.size()) != eco.good_count)
      throw std::invalid_argument("possession vector has wrong length");
    if (!p.non_negative()) throw std::invalid_argument("negative possession amount");
  }
  MacroState macro;
  macro.agent_count = eco.agent_count();
  for (const auto& q : conserved_quantities(eco, state)) macro.totals[q.key] = q.total;
  return macro;
}

Economy set_contact(Economy eco, int part_a, int part_b, const std::set<int>& goods, bool enabled) {
  const int np = eco.structure.part_count();
  if (part_a < 0 || part_a >= np || part_b < 0 || part_b >= np)
    throw std::invalid_argument("unknown part id");
  if (part_a == part_b) throw std::invalid_argument("parts must differ");
  for (int g : goods)
    if (g < 0 || g >= eco.good_count) throw std::invalid_argument("good index out of range");
  auto key = ordered(part_a, part_b);
  auto& entry = eco.structure.tradable[key];
  if (enabled) {
    entry.insert(goods.begin(), goods.end());
  } else {
    for (int g : goods) entry.erase(g);
  }
  if (entry.empty()) eco.structure.tradable.erase(key);
  return eco;
}

Economy scale_economy(const Economy& eco, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (std::holds_alternative<ExplicitRates>(eco.encounters) && lambda != 1.0)
    throw std::invalid_argument("explicit rate matrices have no scaling rule");
  if (lambda == 1.0) return eco;

  Economy scaled;
  scaled.good_count = eco.good_count;
  scaled.good_names = eco.good_names;
  scaled.encounters = eco.encounters;
  scaled.money_component = eco.money_component;

  int next_id = 0;
  for (const auto& part : eco.structure.parts) {
    const int old_n = static_cast<int>(part.size());
    const int new_n = static_cast<int>(std::llround(lambda * old_n));
    if (new_n < 1) throw std::invalid_argument("scaled part would be empty");
    std::vector<int> new_part;
    new_part.reserve(new_n);
    for (int k = 0; k < new_n; ++k) {
      const int src = part[k % old_n];
      scaled.agents.push_back({next_id, eco.agents[src].utility});
      scaled.trader_rates.push_back(eco.trader_rates.empty() ? 0.0 : eco.trader_rates[src]);
      new_part.push_back(next_id);
      ++next_id;
    }
    scaled.structure.parts.push_back(std::move(new_part));
  }
  scaled.structure.tradable = eco.structure.tradable;
  validate_economy(scaled);
  return scaled;
}

void validate_economy(const Economy& eco) {
  const int n = eco.agent_count();
  if (eco.good_count < 1) throw std::invalid_argument("economy needs at least one good");
  if (n < 1) throw std::invalid_argument("economy needs at least one agent");
  for (int i = 0; i < n; ++i) {
    if (eco.agents[i].id != i)
      throw std::invalid_argument("agent ids must be 0..N-1 in order");
    validate_utility(eco.agents[i].utility, eco.good_count);
  }
  if (!eco.trader_rates.empty() && static_cast<int>(eco.trader_rates.size()) != n)
    throw std::invalid_argument("trader_rates length != agent count");
  for (double k : eco.trader_rates)
    if (!(k >= 0.0)) throw std::invalid_argument("trader rates must be >= 0");

  // Parts cover all agents exactly once.
  std::vector<int> seen(n, 0);
  if (eco.structure.parts.empty()) throw std::invalid_argument("contact structure has no parts");
  for (const auto& part : eco.structure.parts) {
    if (part.empty()) throw std::invalid_argument("empty part");
    for (int id : part) {
      if (id < 0 || id >= n) throw std::invalid_argument("part references unknown agent");
      if (seen[id]++) throw std::invalid_argument("agent appears in two parts");
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw std::invalid_argument("agent missing from partition");

  for (const auto& [pair, goods] : eco.structure.tradable) {
    if (pair.first >= pair.second) throw std::invalid_argument("tradable keys must be ordered pairs");
    if (pair.first < 0 || pair.second >= eco.structure.part_count())
      throw std::invalid_argument("tradable references unknown part");
    for (int g : goods)
      if (g < 0 || g >= eco.good_count) throw std::invalid_argument("tradable good out of range");
  }

  if (const auto* ex = std::get_if<ExplicitRates>(&eco.encounters)) {
    if (static_cast<int>(ex->k.size()) != n)
      throw std::invalid_argument("rate matrix size != agent count");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(ex->k[i].size()) != n)
        throw std::invalid_argument("rate matrix not square");
      if (ex->k[i][i] != 0.0) throw std::invalid_argument("rate matrix diagonal must be zero");
      for (int j = 0; j < n; ++j) {
        if (!(ex->k[i][j] >= 0.0)) throw std::invalid_argument("rates must be >= 0");
        if (ex->k[i][j] != ex->k[j][i]) throw std::invalid_argument("rate matrix must be symmetric");
      }
    }
  }

  if (eco.money_component) {
    const auto comps = flow_components(eco, 0);
    if (*eco.money_component < 0 || *eco.money_component >= static_cast<int>(comps.size()))
      throw std::invalid_argument("money_component out of range");
  }

  // Within each money component, agents that can actually exchange money
  // must form a connected encounter graph.
  const auto parts_of = agent_part_index(eco);
  for (const auto& comp : flow_components(eco, 0)) {
    std::vector<int> members;
    for (int p : comp)
      for (int id : eco.structure.parts[p]) members.push_back(id);
    if (members.size() < 2) continue;
    DisjointSets ds(n);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const int i = members[a], j = members[b];
        if (eco.encounter_rate(i, j) <= 0.0) continue;
        if (parts_of[i] == parts_of[j]) {
          ds.unite(i, j);
        } else if (const auto* goods = eco.structure.tradable_between(parts_of[i], parts_of[j]);
                   goods && goods->count(0)) {
          ds.unite(i, j);
        }
      }
    }
    const int root = ds.find(members.front());
    for (int id : members)
      if (ds.find(id) != root)
        throw std::invalid_argument("money component not connected by encounters");
  }
}

std::string key_label(const Economy& eco, const ConservedKey& key) {
  std::string name = key.good < static_cast<int>(eco.good_names.size())
                         ? eco.good_names[key.good]
                         : "g" + std::to_string(key.good);
  name += "[";
  for (std::size_t i = 0; i < key.parts.size(); ++i) {
    if (i) name += "+";
    name += std::to_string(key.parts[i]);
  }
  name += "]";
  return name;
}

MicroState equal_split_state(const Economy& eco, const GoodVector& totals) {
  if (static_cast<int>(totals.size()) != eco.good_count)
    throw std::invalid_argument("totals length != good count");
  if (!totals.non_negative()) throw std::invalid_argument("negative total");
  const int n = eco.agent_count();
  MicroState state;
  state.possessions.assign(n, GoodVector(eco.good_count));
  for (int t = 0; t < eco.good_count; ++t)
    for (int i = 0; i < n; ++i) state.possessions[i][t] = totals[t] / n;
  return state;
}

Economy make_basic_economy(int n_agents, int good_count, const UtilitySpec& utility,
                           double encounter_rate, double trader_rate) {
  return make_population_economy(std::vector<UtilitySpec>(n_agents, utility), good_count,
                                 encounter_rate, trader_rate);
}

Economy make_population_economy(const std::vector<UtilitySpec>& population, int good_count,
                                double encounter_rate, double trader_rate) {
  Economy eco;
  eco.good_count = good_count;
  eco.good_names.push_back("money");
  for (int t = 1; t < good_count; ++t) eco.good_names.push_back("g" + std::to_string(t));
  const int n = static_cast<int>(population.size());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) {
    eco.agents.push_back({i, population[i]});
    all[i] = i;
  }
  eco.structure.parts.push_back(std::move(all));
  eco.encounters = AllToAll{encounter_rate};
  eco.trader_rates.assign(n, trader_rate);
  eco.money_component = 0;
  validate_economy(eco);
  return eco;
}

}  // namespace thermoecon
