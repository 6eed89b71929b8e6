#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thermoecon/dynamics.hpp"
#include "thermoecon/partition.hpp"

namespace thermoecon {

// A macro state paired with the analytic model that scores it.
struct StateBinding {
  EntropyModel model;
  MacroState macro;
};

double binding_log_z(const StateBinding& state);

enum class Accessibility { forward, backward, both, neither };

// Orders two states by log Z with an equality band of 1e-9 N.
Accessibility accessible(const StateBinding& x, const StateBinding& y);

struct TraderAction {
  enum class Kind { add_money, trade_at_price, make_contact, break_contact };
  Kind kind = Kind::add_money;
  double amount = 0.0;         // add_money
  std::vector<double> price;   // trade_at_price: per good, price[0] == 1
  MacroState target;           // expected landing macro state
  double expected_delta_log_z = 0.0;
};

struct TransitionPlan {
  std::vector<TraderAction> steps;
  double total_delta_log_z = 0.0;
};

struct PlanOptions {
  int max_steps = 64;
  double price_step_cap = 0.35;  // log-space cap per trade of the walk
  double level_margin = 0.0;     // keep walk tangents this far under log Z(y)
};

// Constructs a trader-action chain from x up to y. Requires
// log Z(y) > log Z(x) + band and positive good values at y; every emitted
// step has nonnegative expected entropy change.
TransitionPlan plan_transition(const StateBinding& x, const StateBinding& y,
                               const PlanOptions& options = {});

// The state a trading session at `price` equilibrates to, given conserved
// wealth `wealth` at that price. price covers all goods, price[0] == 1.
MacroState tangent_state(const EntropyModel& model, double wealth,
                         const std::vector<double>& price);

struct FinancialEquilibriumVerdict {
  bool equilibrium = false;
  double beta_a = 0.0;
  double beta_b = 0.0;
  int flow_sign = 0;  // +1: money flows a -> b (toward the higher beta)
};

FinancialEquilibriumVerdict financial_equilibrium(const StateBinding& a, const StateBinding& b);

struct MatchMoneyResult {
  enum class Side { add_to_a, add_to_b, already_equal };
  Side side = Side::already_equal;
  double amount = 0.0;
  double beta = 0.0;  // common coolness after the addition
};

// Finds M > 0 with X = Y0 + M (or symmetrically) in financial equilibrium,
// by bisection on the money line; 1e-9 relative tolerance in beta.
MatchMoneyResult match_money(const StateBinding& x_of_a, const StateBinding& y0_of_b);

struct FlankingOptions {
  double epsilon_price = 1e-3;  // discount below market price on the selling path
  double beta_rtol = 1e-6;
  int good = 1;                 // which good is sold
  int max_steps = 100000;
};

struct FlankingResult {
  MacroState lower;   // X0: from X - M, selling the good near market price
  MacroState upper;   // X1 = X + M
  double beta = 0.0;  // common coolness of X0 and X1
  double log_z_lower = 0.0;
  double log_z_x = 0.0;
  double log_z_upper = 0.0;
  std::vector<std::array<double, 3>> path;  // accepted (M, G, beta) along the sale
};

FlankingResult flanking_states(const StateBinding& x, double money,
                               const FlankingOptions& options = {});

// Affine normalization of log Z against two reference states.
double calibrated_entropy(const StateBinding& x, const StateBinding& x0, const StateBinding& x1);

// --- entropy-monotonicity monitor -----------------------------------------

struct LogZSampleStats {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
};

// Analytic log Z evaluated at every thinned sample of a trajectory.
LogZSampleStats log_z_over_samples(const EntropyModel& model, const Trajectory& traj);

MacroState macro_from_sample(const EntropyModel& model, const Trajectory& traj, std::size_t row);

// Finite-size slack for comparing log Z across a stochastic step: the
// Laplace correction is about half a log per conservation degree the step
// relaxes, on top of 3 sample standard deviations.
double monotonicity_allowance(double sample_sd, int relaxed_degrees, int n_agents);

// --- scripted axiom suite ---------------------------------------------------

struct AxiomCheck {
  std::string id;
  std::string context;
  std::map<std::string, double> measured;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct AxiomSuiteConfig {
  std::uint64_t seed = 20260808;
  int n_agents = 50;
  std::uint64_t session_events = 30000;
  bool adversarial = true;
  double epsilon_price = 1e-3;
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
};

AxiomReport run_axiom_suite(const AxiomSuiteConfig& config);

}  // namespace thermoecon
