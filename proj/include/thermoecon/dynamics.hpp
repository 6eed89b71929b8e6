#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "thermoecon/economy.hpp"
#include "thermoecon/sampling.hpp"
#include "thermoecon/stats.hpp"

namespace thermoecon {

struct SimOptions {
  std::uint64_t max_events = 0;
  double max_time = std::numeric_limits<double>::infinity();
  std::optional<std::uint64_t> burn_in_events;  // default 50 N
  std::optional<std::uint64_t> thin_events;     // default N
  bool record_events = false;
  bool record_snapshots = false;
  bool record_agent_money = false;
  SliceParams slice;
};

struct EncounterEvent {
  enum class Kind { agent_pair, trader_financial, trader_trading };
  double time = 0.0;
  Kind kind = Kind::agent_pair;
  int i = -1;
  int j = -1;  // second agent for pair events
  std::vector<int> goods;
};

// One realized run. Reproducible byte-for-byte from
// (economy, initial state, seed, options).
struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t event_count = 0;
  double final_time = 0.0;
  MicroState final_state;
  double final_pot = 0.0;

  int good_count = 0;
  int part_count = 0;
  std::vector<ConservedKey> total_keys;  // conserved keys of the economy

  // Thinned post-burn-in samples. Totals are stored per (good, part),
  // flattened good * part_count + part, so any conserved total is a sum.
  std::vector<double> sample_times;
  std::vector<std::uint64_t> sample_event_indices;
  std::vector<std::vector<double>> sample_part_totals;
  std::vector<double> pot_series;                       // financial sessions
  std::vector<std::vector<double>> sample_agent_money;  // if record_agent_money
  std::vector<MicroState> snapshots;                    // if record_snapshots
  std::vector<EncounterEvent> events;                   // if record_events

  std::vector<RunningMoments> agent_money_moments;

  std::size_t sample_count() const { return sample_times.size(); }
  double part_total(std::size_t row, int good, int part) const {
    return sample_part_totals[row][static_cast<std::size_t>(good) * part_count + part];
  }
  double key_total(std::size_t row, const ConservedKey& key) const;
  // Sample means per conserved key, in total_keys order.
  std::vector<double> mean_key_totals() const;
  int key_index(const ConservedKey& key) const;
};

// Event-driven encounter dynamics: waiting times are exponential in the
// aggregate rate, the event is drawn proportionally to rates, and the pair
// exchanges exactly the goods tradable between their parts.
Trajectory simulate(const Economy& eco, const MicroState& initial, const SimOptions& options,
                    std::uint64_t seed);

struct FinancialSessionResult {
  Trajectory trajectory;
  double final_pot = 0.0;  // returned to the trader when contact breaks
};

// Trader opens a money pot against the distinguished money component;
// agents at rates K_i pool their money with it (flat trader utility).
FinancialSessionResult financial_contact_session(const Economy& eco, const MicroState& initial,
                                                 double pot, const SimOptions& options,
                                                 std::uint64_t seed);

// Trader posts prices for non-money goods; on encounter an agent resamples
// on its budget surface, conserving m + mu . g exactly per event.
Trajectory trading_contact_session(const Economy& eco, const MicroState& initial,
                                   const std::map<int, double>& prices, const SimOptions& options,
                                   std::uint64_t seed);

// Exact draw from the stationary law of a Cobb-Douglas economy: per
// conserved component, amounts are a Dirichlet split of the total.
MicroState stationary_sample_cobb_douglas(const Economy& eco, const MacroState& macro,
                                          std::uint64_t seed);

}  // namespace thermoecon
