#include "thermoecon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermoecon/errors.hpp"

namespace thermoecon {

namespace {

struct TraderMode {
  enum class Kind { none, financial, trading };
  Kind kind = Kind::none;
  double pot = 0.0;
  std::map<int, double> prices;
};

struct PairEntry {
  int i, j;
  double rate;
  std::vector<int> goods;
};

std::vector<double> part_totals_of(const Economy& eco, const MicroState& state) {
  const int np = eco.structure.part_count();
  std::vector<double> out(static_cast<std::size_t>(eco.good_count) * np, 0.0);
  for (int p = 0; p < np; ++p)
    for (int id : eco.structure.parts[p])
      for (int t = 0; t < eco.good_count; ++t)
        out[static_cast<std::size_t>(t) * np + p] += state.possessions[id][t];
  return out;
}

Trajectory run_gillespie(const Economy& eco, const MicroState& initial, const SimOptions& options,
                         std::uint64_t seed, TraderMode trader) {
  if (options.max_events == 0 && !std::isfinite(options.max_time))
    throw std::invalid_argument("simulation horizon required (events or time)");
  const int n = eco.agent_count();
  if (static_cast<int>(initial.possessions.size()) != n)
    throw std::invalid_argument("initial state has wrong number of agents");
  for (const auto& p : initial.possessions)
    if (static_cast<int>(p.size()) != eco.good_count || !p.non_negative())
      throw std::invalid_argument("bad initial possessions");

  const auto parts_of = agent_part_index(eco);

  // Static event table: eligible pairs first, then trader entries.
  std::vector<int> all_goods(eco.good_count);
  for (int t = 0; t < eco.good_count; ++t) all_goods[t] = t;
  std::vector<PairEntry> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double k = eco.encounter_rate(i, j);
      if (k <= 0.0) continue;
      std::vector<int> goods;
      if (parts_of[i] == parts_of[j]) {
        goods = all_goods;
      } else if (const auto* set = eco.structure.tradable_between(parts_of[i], parts_of[j])) {
        goods.assign(set->begin(), set->end());
      }
      if (goods.empty()) continue;
      pairs.push_back({i, j, k, std::move(goods)});
    }
  }
  std::vector<int> trader_agents;
  if (trader.kind != TraderMode::Kind::none && !eco.trader_rates.empty()) {
    std::vector<char> in_scope(n, 1);
    if (trader.kind == TraderMode::Kind::financial) {
      // Financial contact touches the distinguished money component only.
      std::fill(in_scope.begin(), in_scope.end(), 0);
      const auto comps = flow_components(eco, 0);
      const int comp = eco.money_component.value_or(0);
      for (int p : comps.at(comp))
        for (int id : eco.structure.parts[p]) in_scope[id] = 1;
    }
    for (int i = 0; i < n; ++i)
      if (in_scope[i] && eco.trader_rates[i] > 0.0) trader_agents.push_back(i);
  }

  std::vector<double> cumulative;
  cumulative.reserve(pairs.size() + trader_agents.size());
  double total_rate = 0.0;
  for (const auto& p : pairs) cumulative.push_back(total_rate += p.rate);
  for (int i : trader_agents) cumulative.push_back(total_rate += eco.trader_rates[i]);

  Trajectory traj;
  traj.seed = seed;
  traj.final_state = initial;
  traj.good_count = eco.good_count;
  traj.part_count = eco.structure.part_count();
  traj.total_keys = conserved_keys(eco);
  traj.agent_money_moments.assign(n, RunningMoments{});

  Rng rng(seed);
  const std::uint64_t burn_in = options.burn_in_events.value_or(50ULL * n);
  const std::uint64_t thin = std::max<std::uint64_t>(1, options.thin_events.value_or(n));

  if (total_rate <= 0.0) {
    traj.final_pot = trader.pot;
    return traj;  // frozen economy
  }

  MicroState state = initial;
  double time = 0.0;
  std::uint64_t events = 0;
  const std::uint64_t max_events =
      options.max_events > 0 ? options.max_events : std::numeric_limits<std::uint64_t>::max();

  const auto record_sample = [&]() {
    traj.sample_times.push_back(time);
    traj.sample_event_indices.push_back(events);
    traj.sample_part_totals.push_back(part_totals_of(eco, state));
    if (trader.kind == TraderMode::Kind::financial) traj.pot_series.push_back(trader.pot);
    if (options.record_agent_money) {
      std::vector<double> money(n);
      for (int i = 0; i < n; ++i) money[i] = state.possessions[i][0];
      traj.sample_agent_money.push_back(std::move(money));
    }
    if (options.record_snapshots) traj.snapshots.push_back(state);
    for (int i = 0; i < n; ++i) traj.agent_money_moments[i].add(state.possessions[i][0]);
  };

  while (events < max_events) {
    const double dt = rng.exponential(total_rate);
    if (time + dt > options.max_time) {
      time = options.max_time;
      break;
    }
    time += dt;

    const double u = rng.uniform01() * total_rate;
    const std::size_t idx =
        std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();

    EncounterEvent ev;
    ev.time = time;
    if (idx < pairs.size()) {
      const auto& p = pairs[idx];
      ev.kind = EncounterEvent::Kind::agent_pair;
      ev.i = p.i;
      ev.j = p.j;
      ev.goods = p.goods;
      auto [pi, pj] = sample_redistribution(eco.agents[p.i].utility, eco.agents[p.j].utility,
                                            state.possessions[p.i], state.possessions[p.j],
                                            p.goods, options.slice, rng);
      state.possessions[p.i] = std::move(pi);
      state.possessions[p.j] = std::move(pj);
    } else {
      const int agent = trader_agents[idx - pairs.size()];
      ev.i = agent;
      if (trader.kind == TraderMode::Kind::financial) {
        ev.kind = EncounterEvent::Kind::trader_financial;
        ev.goods = {0};
        const double pool = state.possessions[agent][0] + trader.pot;
        const double share = sample_money_split(eco.agents[agent].utility,
                                                state.possessions[agent], pool, options.slice, rng);
        state.possessions[agent][0] = share;
        trader.pot = pool - share;
      } else {
        ev.kind = EncounterEvent::Kind::trader_trading;
        for (const auto& [g, mu] : trader.prices) ev.goods.push_back(g);
        state.possessions[agent] = sample_budget_surface(
            eco.agents[agent].utility, state.possessions[agent], trader.prices, options.slice, rng);
      }
    }
    ++events;
    if (options.record_events) traj.events.push_back(std::move(ev));
    if (events > burn_in && (events - burn_in) % thin == 0) record_sample();
  }

  traj.event_count = events;
  traj.final_time = time;
  traj.final_state = std::move(state);
  traj.final_pot = trader.pot;
  return traj;
}

}  // namespace

double Trajectory::key_total(std::size_t row, const ConservedKey& key) const {
  double total = 0.0;
  for (int p : key.parts) total += part_total(row, key.good, p);
  return total;
}

std::vector<double> Trajectory::mean_key_totals() const {
  std::vector<double> mean(total_keys.size(), 0.0);
  if (sample_part_totals.empty()) return mean;
  for (std::size_t row = 0; row < sample_part_totals.size(); ++row)
    for (std::size_t k = 0; k < total_keys.size(); ++k) mean[k] += key_total(row, total_keys[k]);
  for (double& m : mean) m /= static_cast<double>(sample_part_totals.size());
  return mean;
}

int Trajectory::key_index(const ConservedKey& key) const {
  for (std::size_t k = 0; k < total_keys.size(); ++k)
    if (total_keys[k] == key) return static_cast<int>(k);
  return -1;
}

Trajectory simulate(const Economy& eco, const MicroState& initial, const SimOptions& options,
                    std::uint64_t seed) {
  return run_gillespie(eco, initial, options, seed, TraderMode{});
}

FinancialSessionResult financial_contact_session(const Economy& eco, const MicroState& initial,
                                                 double pot, const SimOptions& options,
                                                 std::uint64_t seed) {
  if (!(pot >= 0.0)) throw std::invalid_argument("pot must be >= 0");
  if (!eco.simple()) throw std::invalid_argument("financial contact needs a simple economy");
  TraderMode trader;
  trader.kind = TraderMode::Kind::financial;
  trader.pot = pot;
  auto traj = run_gillespie(eco, initial, options, seed, std::move(trader));
  const double final_pot = traj.final_pot;
  return {std::move(traj), final_pot};
}

Trajectory trading_contact_session(const Economy& eco, const MicroState& initial,
                                   const std::map<int, double>& prices, const SimOptions& options,
                                   std::uint64_t seed) {
  if (prices.empty()) throw std::invalid_argument("trading contact needs at least one price");
  for (const auto& [good, mu] : prices) {
    if (good <= 0 || good >= eco.good_count)
      throw std::invalid_argument("priced good out of range (money cannot be priced)");
    if (!(mu > 0.0)) throw std::invalid_argument("prices must be > 0");
  }
  TraderMode trader;
  trader.kind = TraderMode::Kind::trading;
  trader.prices = prices;
  return run_gillespie(eco, initial, options, seed, std::move(trader));
}

MicroState stationary_sample_cobb_douglas(const Economy& eco, const MacroState& macro,
                                          std::uint64_t seed) {
  for (const auto& a : eco.agents)
    if (!is_cobb_douglas(a.utility))
      throw std::invalid_argument("stationary sampling requires Cobb-Douglas agents");
  Rng rng(seed);
  MicroState state;
  state.possessions.assign(eco.agent_count(), GoodVector(eco.good_count));
  for (const auto& key : conserved_keys(eco)) {
    const double total = macro.totals.at(key);
    std::vector<int> members;
    for (int p : key.parts)
      for (int id : eco.structure.parts[p]) members.push_back(id);
    std::vector<double> alpha;
    alpha.reserve(members.size());
    for (int id : members)
      alpha.push_back(std::get<CobbDouglas>(eco.agents[id].utility).exponents[key.good]);
    const auto share = rng.dirichlet(alpha);
    for (std::size_t k = 0; k < members.size(); ++k)
      state.possessions[members[k]][key.good] = total * share[k];
  }
  return state;
}

}  // namespace thermoecon
