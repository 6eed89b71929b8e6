#include "thermoecon/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thermoecon/errors.hpp"
#include "thermoecon/rng.hpp"
#include "thermoecon/stats.hpp"

namespace thermoecon {

namespace {

double equality_band(const EntropyModel& model) { return 1e-9 * model.agent_count(); }

// Model totals as a dense per-good vector (single component per good).
std::vector<double> totals_vector(const EntropyModel& model, const MacroState& macro) {
  std::vector<double> p(model.good_count(), 0.0);
  for (const auto& key : model.keys()) p[key.good] = macro.totals.at(key);
  return p;
}

double wealth_at(const std::vector<double>& totals, const std::vector<double>& price) {
  double w = 0.0;
  for (std::size_t t = 0; t < totals.size(); ++t) w += price[t] * totals[t];
  return w;
}

void require_same_model(const StateBinding& x, const StateBinding& y, const char* what) {
  if (!(x.model == y.model))
    throw std::invalid_argument(std::string(what) + " needs states of the same economy model");
}

}  // namespace

double binding_log_z(const StateBinding& state) {
  return log_partition(state.model, state.macro).value;
}

Accessibility accessible(const StateBinding& x, const StateBinding& y) {
  if (x.model.agent_count() != y.model.agent_count() ||
      x.model.good_count() != y.model.good_count() ||
      x.model.family_name() != y.model.family_name())
    throw std::invalid_argument("accessible needs states of compatible economies");
  const double band = equality_band(x.model);
  const double diff = binding_log_z(y) - binding_log_z(x);
  if (std::fabs(diff) <= band) return Accessibility::both;
  return diff > 0.0 ? Accessibility::forward : Accessibility::backward;
}

MacroState tangent_state(const EntropyModel& model, double wealth,
                         const std::vector<double>& price) {
  if (static_cast<int>(price.size()) != model.good_count() || price[0] != 1.0)
    throw std::invalid_argument("price must cover all goods with price[0] == 1");
  for (double mu : price)
    if (!(mu > 0.0)) throw std::invalid_argument("prices must be > 0");
  if (!(wealth > 0.0)) throw std::invalid_argument("wealth must be > 0");

  if (const auto* cd = std::get_if<EntropyModel::CobbDouglasFamily>(&model.family())) {
    // nu_t / beta == mu_t with nu_t = (A_t - 1) / G_t pins the split of wealth.
    double denom = 0.0;
    for (const auto& block : cd->blocks) {
      if (!(block.exponent_sum > 1.0))
        throw std::domain_error("tangent state needs positive good values (A_t > 1)");
      denom += block.exponent_sum - 1.0;
    }
    const double beta = denom / wealth;
    MacroState macro;
    macro.agent_count = model.agent_count();
    for (const auto& block : cd->blocks)
      macro.totals[block.key] = (block.exponent_sum - 1.0) / (beta * price[block.key.good]);
    return macro;
  }

  // Two-good families: bisect money; the price ratio nu/beta rises with money.
  const int g = model.good_count() - 1;
  const double mu = price[g];
  const auto price_at = [&](double money) {
    MacroState macro = single_component_macro(model, {money, (wealth - money) / mu});
    return good_values(model, macro).price[g];
  };
  double lo = wealth * 1e-9, hi = wealth * (1.0 - 1e-9);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (price_at(mid) < mu)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * wealth) break;
  }
  const double money = 0.5 * (lo + hi);
  return single_component_macro(model, {money, (wealth - money) / mu});
}

TransitionPlan plan_transition(const StateBinding& x, const StateBinding& y,
                               const PlanOptions& options) {
  require_same_model(x, y, "plan_transition");
  const EntropyModel& model = x.model;
  if (!model.one_component_per_good())
    throw std::domain_error("plan_transition needs a single flow component per good");
  const double band = equality_band(model);
  const double log_z_x = binding_log_z(x);
  const double log_z_y = binding_log_z(y);
  if (!(log_z_y > log_z_x + band))
    throw std::invalid_argument("target state is not strictly above the source in log Z");

  const auto gv_y = good_values(model, y.macro);
  const auto y_tot = totals_vector(model, y.macro);
  const auto plane_value = [&](const std::vector<double>& c) {
    double v = 0.0;
    for (int t = 0; t < model.good_count(); ++t) v += gv_y.nu[t] * (c[t] - y_tot[t]);
    return v;
  };

  TransitionPlan plan;
  const auto push_step = [&](TraderAction action, double log_z_before) {
    const double log_z_after = log_partition(model, action.target).value;
    action.expected_delta_log_z = log_z_after - log_z_before;
    if (action.expected_delta_log_z < -band)
      throw NumericError("planned step would lower log Z");
    plan.steps.push_back(std::move(action));
    return log_z_after;
  };

  auto current = totals_vector(model, x.macro);
  double log_z_cur = log_z_x;

  const auto make_macro = [&](const std::vector<double>& totals) {
    MacroState macro;
    macro.agent_count = model.agent_count();
    for (const auto& key : model.keys()) macro.totals[key] = totals[key.good];
    return macro;
  };

  const auto close_to_target = [&](const std::vector<double>& c) {
    for (int t = 0; t < model.good_count(); ++t)
      if (std::fabs(c[t] - y_tot[t]) > 1e-12 * std::max(1.0, y_tot[t])) return false;
    return true;
  };

  const auto finish = [&](double v) {
    if (v < -band) {
      TraderAction add;
      add.kind = TraderAction::Kind::add_money;
      add.amount = -v / gv_y.beta;
      auto lifted = current;
      lifted[0] += add.amount;
      add.target = make_macro(lifted);
      log_z_cur = push_step(std::move(add), log_z_cur);
      current = lifted;
    }
    if (close_to_target(current)) return;  // pure money addition reaches y
    TraderAction trade;
    trade.kind = TraderAction::Kind::trade_at_price;
    trade.price = gv_y.price;
    trade.target = y.macro;
    push_step(std::move(trade), log_z_cur);
  };

  double v = plane_value(current);
  if (v <= band) {
    finish(v);
    plan.total_delta_log_z = log_z_y - log_z_x;
    return plan;
  }

  // Above the support plane: walk the posted price toward the target's
  // price with capped log steps; every trade re-equilibrates and drains
  // wealth measured at the target's price.
  for (int step = 0; step < options.max_steps; ++step) {
    const auto gv_c = good_values(model, make_macro(current));
    double cap = options.price_step_cap;
    bool accepted = false;
    for (int shrink = 0; shrink < 40 && !accepted; ++shrink) {
      std::vector<double> trial_price(model.good_count(), 1.0);
      for (int t = 1; t < model.good_count(); ++t) {
        const double delta = std::log(gv_y.price[t]) - std::log(gv_c.price[t]);
        trial_price[t] = gv_c.price[t] * std::exp(std::clamp(delta, -cap, cap));
      }
      const double w = wealth_at(current, trial_price);
      const MacroState t_state = tangent_state(model, w, trial_price);
      const double log_z_t = log_partition(model, t_state).value;
      if (log_z_t > log_z_y - band - options.level_margin) {
        cap *= 0.5;  // would overshoot the target level
        continue;
      }
      const auto t_tot = totals_vector(model, t_state);
      TraderAction trade;
      trade.kind = TraderAction::Kind::trade_at_price;
      trade.price = trial_price;
      trade.target = t_state;
      log_z_cur = push_step(std::move(trade), log_z_cur);
      current = t_tot;
      accepted = true;
    }
    if (!accepted) {
      std::ostringstream trace;
      trace << "plan walk stalled at step " << step << "; log Z " << log_z_cur << " of "
            << log_z_y;
      throw NumericError(trace.str());
    }
    v = plane_value(current);
    if (v <= band) {
      finish(v);
      plan.total_delta_log_z = log_z_y - log_z_x;
      return plan;
    }
  }
  std::ostringstream trace;
  trace << "plan step limit (" << options.max_steps << ") exceeded; plane value " << v;
  throw NumericError(trace.str());
}

FinancialEquilibriumVerdict financial_equilibrium(const StateBinding& a, const StateBinding& b) {
  FinancialEquilibriumVerdict verdict;
  verdict.beta_a = coolness(a.model, a.macro);
  verdict.beta_b = coolness(b.model, b.macro);
  const double rel = std::fabs(verdict.beta_a - verdict.beta_b) /
                     std::max(verdict.beta_a, verdict.beta_b);
  if (rel <= 1e-6) {
    verdict.equilibrium = true;
    verdict.flow_sign = 0;
  } else {
    verdict.equilibrium = false;
    verdict.flow_sign = verdict.beta_b > verdict.beta_a ? +1 : -1;
  }
  return verdict;
}

MatchMoneyResult match_money(const StateBinding& x_of_a, const StateBinding& y0_of_b) {
  const double beta_a = coolness(x_of_a.model, x_of_a.macro);
  const double beta_b = coolness(y0_of_b.model, y0_of_b.macro);
  MatchMoneyResult result;
  if (std::fabs(beta_a - beta_b) <= 1e-9 * std::max(beta_a, beta_b)) {
    result.side = MatchMoneyResult::Side::already_equal;
    result.amount = 0.0;
    result.beta = beta_a;
    return result;
  }
  // The hotter side (higher beta) absorbs money until the coolnesses meet.
  const bool add_to_b = beta_b > beta_a;
  const StateBinding& side = add_to_b ? y0_of_b : x_of_a;
  const double target = add_to_b ? beta_a : beta_b;
  const auto& key = side.model.money_key();
  const double m0 = side.macro.totals.at(key);
  const auto beta_plus = [&](double m) {
    return coolness(side.model, with_total(side.macro, key, m0 + m));
  };
  double hi = std::max(m0, 1.0);
  int doublings = 0;
  while (beta_plus(hi) > target) {
    hi *= 2.0;
    if (++doublings > 40 || hi > 1e6 * std::max(m0, 1.0))
      throw NumericError("no money amount brings the coolnesses together");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (beta_plus(mid) > target)
      lo = mid;
    else
      hi = mid;
    const double beta_mid = beta_plus(0.5 * (lo + hi));
    if (std::fabs(beta_mid - target) <= 1e-9 * target) break;
  }
  result.side = add_to_b ? MatchMoneyResult::Side::add_to_b : MatchMoneyResult::Side::add_to_a;
  result.amount = 0.5 * (lo + hi);
  result.beta = target;
  return result;
}

FlankingResult flanking_states(const StateBinding& x, double money,
                               const FlankingOptions& options) {
  const EntropyModel& model = x.model;
  const auto& money_key = model.money_key();
  const double m_x = x.macro.totals.at(money_key);
  if (!(money > 0.0) || !(money < m_x))
    throw std::invalid_argument("flanking needs 0 < M < money of X");
  if (options.good <= 0 || options.good >= model.good_count())
    throw std::invalid_argument("flanking needs a non-money good");
  ConservedKey good_key;
  bool found = false;
  for (const auto& key : model.keys())
    if (key.good == options.good) {
      good_key = key;
      found = true;
    }
  if (!found) throw std::invalid_argument("good not in model");

  FlankingResult result;
  result.log_z_x = binding_log_z(x);
  result.upper = with_total(x.macro, money_key, m_x + money);
  result.log_z_upper = log_partition(model, result.upper).value;
  const double beta_target = coolness(model, result.upper);

  MacroState cur = with_total(x.macro, money_key, m_x - money);
  double log_z_prev = log_partition(model, cur).value;
  double beta_cur = coolness(model, cur);
  result.path.push_back({cur.totals.at(money_key), cur.totals.at(good_key), beta_cur});

  double step_frac = 0.02;
  for (int step = 0; step < options.max_steps; ++step) {
    if (std::fabs(beta_cur - beta_target) <= options.beta_rtol * beta_target) break;
    if (beta_cur < beta_target)
      throw NumericError("selling path overshot the target coolness");
    const double mu = good_values(model, cur).price[options.good];
    const double g_cur = cur.totals.at(good_key);
    double dg = -g_cur * step_frac;
    MacroState trial;
    double beta_trial = beta_cur;
    for (int shrink = 0; shrink < 80; ++shrink) {
      trial = cur;
      trial.totals.at(good_key) = g_cur + dg;
      if (!(trial.totals.at(good_key) > 0.0)) {
        dg *= 0.5;
        continue;
      }
      trial.totals.at(money_key) -= (1.0 - options.epsilon_price) * mu * dg;
      beta_trial = coolness(model, trial);
      if (beta_trial < beta_target * (1.0 - options.beta_rtol)) {
        dg *= 0.5;  // crossed the target; bisect the last step
        continue;
      }
      break;
    }
    if (!(trial.totals.at(good_key) > 0.0))
      throw NumericError("selling path exits the admissible domain");
    if (!(beta_trial < beta_cur))
      throw NumericError("coolness failed to decrease along the selling path");
    const double log_z_trial = log_partition(model, trial).value;
    if (!(log_z_trial < log_z_prev))
      throw NumericError("log Z failed to decrease along the selling path");
    cur = trial;
    beta_cur = beta_trial;
    log_z_prev = log_z_trial;
    result.path.push_back({cur.totals.at(money_key), cur.totals.at(good_key), beta_cur});
  }
  if (std::fabs(beta_cur - beta_target) > options.beta_rtol * beta_target)
    throw NumericError("selling path did not reach the target coolness");

  result.lower = cur;
  result.log_z_lower = log_z_prev;
  result.beta = beta_target;
  if (!(result.log_z_lower < result.log_z_x && result.log_z_x < result.log_z_upper))
    throw NumericError("flanking states do not bracket X in log Z");
  return result;
}

double calibrated_entropy(const StateBinding& x, const StateBinding& x0, const StateBinding& x1) {
  const double band = equality_band(x.model);
  const double s0 = binding_log_z(x0);
  const double s1 = binding_log_z(x1);
  const double s = binding_log_z(x);
  if (!(s1 - s0 > band)) throw std::invalid_argument("degenerate reference states");
  if (s < s0 - band || s > s1 + band)
    throw std::invalid_argument("state outside the reference bracket");
  return (s - s0) / (s1 - s0);
}

LogZSampleStats log_z_over_samples(const EntropyModel& model, const Trajectory& traj) {
  RunningMoments acc;
  for (std::size_t row = 0; row < traj.sample_count(); ++row)
    acc.add(log_partition(model, macro_from_sample(model, traj, row)).value);
  return {acc.mean, acc.stddev(), static_cast<std::size_t>(acc.n)};
}

MacroState macro_from_sample(const EntropyModel& model, const Trajectory& traj, std::size_t row) {
  MacroState macro;
  macro.agent_count = model.agent_count();
  for (const auto& key : model.keys()) macro.totals[key] = traj.key_total(row, key);
  return macro;
}

double monotonicity_allowance(double sample_sd, int relaxed_degrees, int n_agents) {
  return 3.0 * sample_sd + 0.5 * relaxed_degrees * (std::log(static_cast<double>(n_agents)) + 3.0);
}

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

Economy suite_economy(int n, std::uint64_t seed, int parts) {
  Rng rng(seed);
  std::vector<UtilitySpec> population;
  population.reserve(n);
  for (int i = 0; i < n; ++i) {
    CobbDouglas cd;
    cd.exponents = {1.5 + rng.uniform(0.0, 1.5), 1.5 + rng.uniform(0.0, 1.5)};
    population.push_back(cd);
  }
  Economy eco = make_population_economy(population, 2);
  if (parts == 2) {
    const int half = n / 2;
    eco.structure.parts.clear();
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) (i < half ? a : b).push_back(i);
    eco.structure.parts = {a, b};
    eco.structure.tradable[{0, 1}] = {0, 1};
    validate_economy(eco);
  }
  return eco;
}

AxiomCheck check_scaling(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A4", "scaled-copy entropy density invariance", {}, 0.0, false, ""};
  const Economy eco = suite_economy(config.n_agents, config.seed, 1);
  const EntropyModel model = EntropyModel::from_economy(eco);
  const std::vector<double> per_agent{4.0, 2.0};
  const int n = eco.agent_count();
  const auto zeta_of = [&](const Economy& e) {
    const EntropyModel m = EntropyModel::from_economy(e);
    const int count = e.agent_count();
    const MacroState macro =
        single_component_macro(m, {per_agent[0] * count, per_agent[1] * count});
    return log_partition(m, macro).value / count;
  };
  const double zeta = zeta_of(eco);
  double worst = 0.0;
  for (double lambda : {0.5, 2.0}) {
    const double zeta_scaled = zeta_of(scale_economy(eco, lambda));
    worst = std::max(worst, std::fabs(zeta_scaled - zeta));
  }
  check.tolerance = 2.0 * eco.good_count * std::log(static_cast<double>(n)) / n;
  check.measured["zeta"] = zeta;
  check.measured["max_deviation"] = worst;
  check.pass = worst <= check.tolerance;
  return check;
}

AxiomCheck check_split_merge(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A5", "split and merge reversibility", {}, 0.0, false, ""};
  Economy eco = suite_economy(config.n_agents, config.seed, 2);
  const EntropyModel joined = EntropyModel::from_economy(eco);
  const Economy eco_split = set_contact(eco, 0, 1, {0, 1}, false);
  const EntropyModel split = EntropyModel::from_economy(eco_split);

  const GoodVector totals{4.0 * config.n_agents, 2.0 * config.n_agents};
  const MicroState init = equal_split_state(eco, totals);
  SimOptions options;
  options.max_events = config.session_events;
  const Trajectory traj = simulate(eco, init, options, Rng::derive_seed(config.seed, 5));

  const double log_z_joined =
      log_partition(joined, macro_state_of(eco, init)).value;
  const auto stats = log_z_over_samples(split, traj);
  const double realized =
      log_partition(split, macro_state_of(eco_split, traj.final_state)).value;
  // Merging back restores the joined totals bit-for-bit up to event rounding.
  const double merged_back =
      log_partition(joined, macro_state_of(eco, traj.final_state)).value;

  check.tolerance = monotonicity_allowance(stats.sd, eco.good_count, config.n_agents);
  check.measured["log_z_joined"] = log_z_joined;
  check.measured["split_sample_mean"] = stats.mean;
  check.measured["split_sample_sd"] = stats.sd;
  check.measured["split_realized"] = realized;
  check.measured["merge_back_gap"] = std::fabs(merged_back - log_z_joined);
  check.pass = realized >= log_z_joined - check.tolerance &&
               std::fabs(merged_back - log_z_joined) <= 1e-6 * std::fabs(log_z_joined);
  return check;
}

AxiomCheck check_merge_concavity(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A7", "merging scaled copies never lowers total entropy", {}, 0.0, false, ""};
  const Economy eco = suite_economy(config.n_agents, config.seed, 1);
  Rng rng(Rng::derive_seed(config.seed, 7));
  double min_margin = 1e300;
  for (int trial = 0; trial < 5; ++trial) {
    const double lambda = rng.uniform(0.2, 0.8);
    const int n_a = std::max(1, static_cast<int>(std::llround(lambda * config.n_agents)));
    std::vector<UtilitySpec> pop_a, pop_b;
    for (int i = 0; i < config.n_agents; ++i)
      (i < n_a ? pop_a : pop_b).push_back(eco.agents[i].utility);
    const EntropyModel model_a = EntropyModel::from_economy(make_population_economy(pop_a, 2));
    const EntropyModel model_b = EntropyModel::from_economy(make_population_economy(pop_b, 2));
    const EntropyModel model_ab = EntropyModel::from_economy(eco);
    const std::vector<double> px{rng.uniform(2.0, 6.0) * n_a, rng.uniform(1.0, 3.0) * n_a};
    const int n_b = config.n_agents - n_a;
    const std::vector<double> py{rng.uniform(2.0, 6.0) * n_b, rng.uniform(1.0, 3.0) * n_b};
    const double sum_parts =
        log_partition(model_a, single_component_macro(model_a, px)).value +
        log_partition(model_b, single_component_macro(model_b, py)).value;
    const double merged =
        log_partition(model_ab,
                      single_component_macro(model_ab, {px[0] + py[0], px[1] + py[1]}))
            .value;
    min_margin = std::min(min_margin, merged - sum_parts);
  }
  check.tolerance = monotonicity_allowance(0.0, eco.good_count, config.n_agents);
  check.measured["min_margin"] = min_margin;
  check.pass = min_margin >= -check.tolerance;
  return check;
}

AxiomCheck check_add_money(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A8", "adding money strictly raises entropy", {}, 0.0, false, ""};
  const Economy eco = suite_economy(config.n_agents, config.seed, 1);
  const EntropyModel model = EntropyModel::from_economy(eco);
  const GoodVector totals{4.0 * config.n_agents, 2.0 * config.n_agents};
  const MacroState macro = single_component_macro(model, {totals[0], totals[1]});
  const double pot = 0.3 * totals[0];

  const double delta_integral =
      thermo_integrate_log_z(model, macro, totals[0], totals[0] + pot);
  const double delta_direct =
      log_partition(model, with_total(macro, model.money_key(), totals[0] + pot)).value -
      log_partition(model, macro).value;

  SimOptions options;
  options.max_events = config.session_events;
  const auto session = financial_contact_session(eco, equal_split_state(eco, totals), pot,
                                                 options, Rng::derive_seed(config.seed, 8));
  double final_money = 0.0;
  for (const auto& p : session.trajectory.final_state.possessions) final_money += p[0];

  check.tolerance = 1e-8 * std::fabs(delta_direct);
  check.measured["delta_log_z"] = delta_direct;
  check.measured["integral_gap"] = std::fabs(delta_integral - delta_direct);
  check.measured["money_gained"] = final_money - totals[0];
  check.pass = delta_direct > 0.0 && std::fabs(delta_integral - delta_direct) <= check.tolerance &&
               final_money > totals[0];
  return check;
}

AxiomCheck check_equilibrium_transitivity(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A13/A15", "money matching and equilibrium transitivity", {}, 0.0, false, ""};
  const int n = config.n_agents;
  const auto make_binding = [&](double alpha_money, double money, std::uint64_t salt) {
    Rng rng(Rng::derive_seed(config.seed, salt));
    std::vector<UtilitySpec> pop;
    for (int i = 0; i < n; ++i) {
      CobbDouglas cd;
      cd.exponents = {alpha_money + rng.uniform(0.0, 0.5), 2.0};
      pop.push_back(cd);
    }
    const Economy eco = make_population_economy(pop, 2);
    const EntropyModel model = EntropyModel::from_economy(eco);
    return StateBinding{model, single_component_macro(model, {money, 2.0 * n})};
  };
  StateBinding a = make_binding(2.0, 4.0 * n, 13);
  StateBinding b = make_binding(3.0, 3.0 * n, 14);
  StateBinding c = make_binding(3.5, 2.0 * n, 15);

  const auto match_ab = match_money(a, b);
  auto lift = [&](StateBinding s, const MatchMoneyResult& m, bool is_second) {
    if ((m.side == MatchMoneyResult::Side::add_to_b && is_second) ||
        (m.side == MatchMoneyResult::Side::add_to_a && !is_second)) {
      const auto& key = s.model.money_key();
      s.macro = with_total(s.macro, key, s.macro.totals.at(key) + m.amount);
    }
    return s;
  };
  StateBinding a1 = lift(a, match_ab, false);
  StateBinding b1 = lift(b, match_ab, true);
  // c matched against the post-match a1 so all three share one coolness.
  const auto match_a1c = match_money(a1, c);
  StateBinding a2 = lift(a1, match_a1c, false);
  StateBinding c1 = lift(c, match_a1c, true);

  const auto ab = financial_equilibrium(a1, b1);
  const auto ac = financial_equilibrium(a2, c1);
  const auto bc = financial_equilibrium(b1, c1);
  check.measured["beta_a"] = ab.beta_a;
  check.measured["beta_b"] = ab.beta_b;
  check.measured["beta_c"] = ac.beta_b;
  check.measured["match_ab_amount"] = match_ab.amount;
  check.tolerance = 1e-6;
  // Transitivity needs a2 == a1 (no further money was added to a).
  check.pass = ab.equilibrium && ac.equilibrium && bc.equilibrium &&
               match_a1c.side != MatchMoneyResult::Side::add_to_a;
  if (match_a1c.side == MatchMoneyResult::Side::add_to_a)
    check.detail = "second match moved the reference state";
  return check;
}

AxiomCheck check_flanking(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A14", "flanking states with equal coolness", {}, 0.0, false, ""};
  const Economy eco = suite_economy(config.n_agents, config.seed, 1);
  const EntropyModel model = EntropyModel::from_economy(eco);
  const double money = 4.0 * config.n_agents;
  const StateBinding x{model, single_component_macro(model, {money, 2.0 * config.n_agents})};
  FlankingOptions options;
  options.epsilon_price = config.epsilon_price;
  const auto wide = flanking_states(x, 0.2 * money, options);
  const auto narrow = flanking_states(x, 0.02 * money, options);
  const double beta0 = coolness(model, wide.lower);
  const double beta1 = coolness(model, wide.upper);
  check.tolerance = 1e-6;
  check.measured["beta_mismatch"] = std::fabs(beta0 - beta1) / beta1;
  check.measured["wide_gap"] = wide.log_z_upper - wide.log_z_lower;
  check.measured["narrow_gap"] = narrow.log_z_upper - narrow.log_z_lower;
  check.pass = std::fabs(beta0 - beta1) / beta1 <= check.tolerance &&
               narrow.log_z_upper - narrow.log_z_lower < wide.log_z_upper - wide.log_z_lower;
  return check;
}

AxiomCheck check_adversarial(const AxiomSuiteConfig& config) {
  AxiomCheck check{"A7-control", "injected entropy decrease is flagged", {}, 0.0, false, ""};
  const Economy eco = suite_economy(config.n_agents, config.seed, 1);
  const EntropyModel model = EntropyModel::from_economy(eco);
  const double money = 4.0 * config.n_agents;
  const MacroState macro = single_component_macro(model, {money, 2.0 * config.n_agents});
  // A confiscation is not a trader mode; the monitor must reject it.
  const MacroState wrong = with_total(macro, model.money_key(), 0.5 * money);
  const double delta = log_partition(model, wrong).value - log_partition(model, macro).value;
  check.tolerance = monotonicity_allowance(0.0, 1, config.n_agents);
  check.measured["delta_log_z"] = delta;
  check.pass = delta < -check.tolerance;  // flagged as a violation
  return check;
}

}  // namespace

AxiomReport run_axiom_suite(const AxiomSuiteConfig& config) {
  AxiomReport report;
  report.seed = config.seed;
  report.checks.push_back(check_scaling(config));
  report.checks.push_back(check_split_merge(config));
  report.checks.push_back(check_merge_concavity(config));
  report.checks.push_back(check_add_money(config));
  report.checks.push_back(check_equilibrium_transitivity(config));
  report.checks.push_back(check_flanking(config));
  if (config.adversarial) report.checks.push_back(check_adversarial(config));
  return report;
}

}  // namespace thermoecon
