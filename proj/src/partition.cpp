#include "thermoecon/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thermoecon/errors.hpp"
#include "thermoecon/stats.hpp"

namespace thermoecon {

namespace {

constexpr double kGradTolPerAgent = 1e-10;
// Relative window around beta == nu inside which the substitutes closed
// form switches to its series expansion.
constexpr double kEqualRateWindow = 1e-6;

double require_total(const MacroState& macro, const ConservedKey& key) {
  const auto it = macro.totals.find(key);
  if (it == macro.totals.end()) throw std::invalid_argument("macro state missing a conserved total");
  return it->second;
}

// Per-agent log Z_c for substitutes: log[Gamma(a)(beta^-a - nu^-a)/(nu - beta)].
double substitutes_log_zc(double alpha, double beta, double nu) {
  const double x = (nu - beta) / beta;
  if (std::fabs(x) < kEqualRateWindow) {
    const double a1 = alpha + 1.0;
    const double series = 1.0 - a1 * x / 2.0 + a1 * (alpha + 2.0) * x * x / 6.0;
    return std::lgamma(alpha + 1.0) - (alpha + 1.0) * std::log(beta) + std::log(series);
  }
  const double diff = std::pow(beta, -alpha) - std::pow(nu, -alpha);
  return std::lgamma(alpha) + std::log(diff / (nu - beta));
}

// Per-agent (M, G) for substitutes, gradient of -log z_c.
std::pair<double, double> substitutes_means(double alpha, double beta, double nu) {
  const double x = (nu - beta) / beta;
  if (std::fabs(x) < kEqualRateWindow) {
    const double m = (alpha + 1.0) / (2.0 * beta) + (alpha * alpha - 1.0) * x / (12.0 * beta);
    const double y = (beta - nu) / nu;
    const double g = (alpha + 1.0) / (2.0 * nu) + (alpha * alpha - 1.0) * y / (12.0 * nu);
    return {m, g};
  }
  const double diff = std::pow(beta, -alpha) - std::pow(nu, -alpha);
  const double m = alpha * std::pow(beta, -alpha - 1.0) / diff - 1.0 / (nu - beta);
  const double g = -alpha * std::pow(nu, -alpha - 1.0) / diff + 1.0 / (nu - beta);
  return {m, g};
}

void require_positive_point(const EntropyModel& model, const CanonicalPoint& point) {
  if (static_cast<int>(point.values.size()) != model.good_count())
    throw std::invalid_argument("canonical point has wrong dimension");
  for (double v : point.values)
    if (!(v > 0.0)) throw std::invalid_argument("canonical point components must be > 0");
}

}  // namespace

EntropyModel::EntropyModel(Family family, int good_count, int agent_count)
    : family_(std::move(family)), good_count_(good_count), agent_count_(agent_count) {}

EntropyModel EntropyModel::from_economy(const Economy& eco) {
  const int n = eco.agent_count();
  bool all_cd = true;
  for (const auto& a : eco.agents) all_cd = all_cd && is_cobb_douglas(a.utility);

  if (all_cd) {
    CobbDouglasFamily fam;
    const auto parts_of = agent_part_index(eco);
    for (const auto& key : conserved_keys(eco)) {
      CobbDouglasBlock block;
      block.key = key;
      for (int p : key.parts) {
        for (int id : eco.structure.parts[p]) {
          const double a = std::get<CobbDouglas>(eco.agents[id].utility).exponents[key.good];
          block.exponents.push_back(a);
          block.exponent_sum += a;
          block.sum_log_gamma += std::lgamma(a);
        }
      }
      fam.blocks.push_back(std::move(block));
    }
    const auto money_components = flow_components(eco, 0);
    if (eco.money_component) {
      fam.money_key = ConservedKey{0, money_components[*eco.money_component]};
    } else if (money_components.size() == 1) {
      fam.money_key = ConservedKey{0, money_components[0]};
    }
    return EntropyModel(std::move(fam), eco.good_count, n);
  }

  // Substitutes / complements populations: common alpha over the pair
  // (money, other), all goods in one flow component.
  const auto& first = eco.agents.front().utility;
  for (const auto& a : eco.agents)
    if (a.utility != first)
      throw std::invalid_argument("entropy model needs a homogeneous utility population");
  for (int t = 0; t < eco.good_count; ++t)
    if (flow_components(eco, t).size() != 1)
      throw std::invalid_argument("substitutes/complements model needs one flow component per good");
  if (const auto* ps = std::get_if<PerfectSubstitutes>(&first)) {
    if (ps->goods[0] != 0) throw std::invalid_argument("utility pair must include money as good 0");
    return EntropyModel(SubstitutesFamily{n, ps->alpha, ps->goods[1]}, eco.good_count, n);
  }
  const auto& c = std::get<Complements>(first);
  if (c.goods[0] != 0) throw std::invalid_argument("utility pair must include money as good 0");
  return EntropyModel(ComplementsFamily{n, c.alpha, c.goods[1]}, eco.good_count, n);
}

EntropyModel EntropyModel::cobb_douglas(const std::vector<std::vector<double>>& exponents) {
  if (exponents.empty()) throw std::invalid_argument("empty population");
  const int goods = static_cast<int>(exponents.front().size());
  CobbDouglasFamily fam;
  for (int t = 0; t < goods; ++t) {
    CobbDouglasBlock block;
    block.key = ConservedKey{t, {0}};
    for (const auto& row : exponents) {
      if (static_cast<int>(row.size()) != goods)
        throw std::invalid_argument("ragged exponent matrix");
      if (!(row[t] > 0.0)) throw std::invalid_argument("exponents must be > 0");
      block.exponents.push_back(row[t]);
      block.exponent_sum += row[t];
      block.sum_log_gamma += std::lgamma(row[t]);
    }
    fam.blocks.push_back(std::move(block));
  }
  fam.money_key = ConservedKey{0, {0}};
  return EntropyModel(std::move(fam), goods, static_cast<int>(exponents.size()));
}

EntropyModel EntropyModel::substitutes(int n_agents, double alpha) {
  if (n_agents < 1 || !(alpha > 0.0)) throw std::invalid_argument("bad substitutes parameters");
  return EntropyModel(SubstitutesFamily{n_agents, alpha, 1}, 2, n_agents);
}

EntropyModel EntropyModel::complements(int n_agents, double alpha) {
  if (n_agents < 1 || !(alpha > 0.0)) throw std::invalid_argument("bad complements parameters");
  return EntropyModel(ComplementsFamily{n_agents, alpha, 1}, 2, n_agents);
}

std::string EntropyModel::family_name() const {
  if (std::holds_alternative<CobbDouglasFamily>(family_)) return "cobb_douglas";
  if (std::holds_alternative<SubstitutesFamily>(family_)) return "substitutes";
  return "complements";
}

std::vector<ConservedKey> EntropyModel::keys() const {
  if (const auto* cd = std::get_if<CobbDouglasFamily>(&family_)) {
    std::vector<ConservedKey> out;
    for (const auto& b : cd->blocks) out.push_back(b.key);
    return out;
  }
  std::vector<ConservedKey> out;
  for (int t = 0; t < good_count_; ++t) out.push_back(ConservedKey{t, {0}});
  return out;
}

const ConservedKey& EntropyModel::money_key() const {
  if (const auto* cd = std::get_if<CobbDouglasFamily>(&family_)) {
    if (!cd->money_key) throw std::domain_error("no distinguished money component");
    return *cd->money_key;
  }
  static const ConservedKey simple_money{0, {0}};
  return simple_money;
}

bool EntropyModel::one_component_per_good() const {
  const auto* cd = std::get_if<CobbDouglasFamily>(&family_);
  if (!cd) return true;
  return static_cast<int>(cd->blocks.size()) == good_count_;
}

TaggedValue log_partition(const EntropyModel& model, const MacroState& macro) {
  if (macro.agent_count != model.agent_count())
    throw std::invalid_argument("macro agent count != model agent count");
  if (const auto* cd = std::get_if<EntropyModel::CobbDouglasFamily>(&model.family())) {
    double total = 0.0;
    for (const auto& block : cd->blocks) {
      const double p = require_total(macro, block.key);
      if (!(p > 0.0)) {
        if (p == 0.0 && block.exponent_sum == 1.0) continue;  // single flat agent
        throw std::domain_error("inadmissible total: log Z undefined at zero");
      }
      total += (block.exponent_sum - 1.0) * std::log(p) + block.sum_log_gamma -
               std::lgamma(block.exponent_sum);
    }
    return {total, ValueOrder::exact, ""};
  }
  auto result = legendre_entropy(model, macro);
  result.entropy.note =
      "no closed microcanonical form at finite N; value from the canonical Legendre transform";
  return result.entropy;
}

double coolness(const EntropyModel& model, const MacroState& macro) {
  if (const auto* cd = std::get_if<EntropyModel::CobbDouglasFamily>(&model.family())) {
    const auto& key = model.money_key();
    for (const auto& block : cd->blocks) {
      if (block.key != key) continue;
      const double m = require_total(macro, key);
      if (!(m > 0.0)) throw std::domain_error("coolness needs money total > 0");
      const double beta = (block.exponent_sum - 1.0) / m;
      if (!(beta > 0.0)) throw std::domain_error("coolness assumption violated: beta <= 0");
      return beta;
    }
    throw std::domain_error("money key not in model");
  }
  return legendre_entropy(model, macro).minimizer.beta();
}

GoodValues good_values(const EntropyModel& model, const MacroState& macro) {
  if (!model.one_component_per_good())
    throw std::domain_error("good values need a single flow component per good");
  GoodValues out;
  out.nu.assign(model.good_count(), 0.0);
  if (const auto* cd = std::get_if<EntropyModel::CobbDouglasFamily>(&model.family())) {
    for (const auto& block : cd->blocks) {
      const double p = require_total(macro, block.key);
      if (!(p > 0.0)) throw std::domain_error("good values need totals > 0");
      const double v = (block.exponent_sum - 1.0) / p;
      if (!(v > 0.0)) throw std::domain_error("positivity assumption violated: nu <= 0");
      out.nu[block.key.good] = v;
    }
  } else {
    const auto ls = legendre_entropy(model, macro);
    out.nu = ls.minimizer.values;
  }
  out.beta = out.nu[0];
  out.price.assign(model.good_count(), 1.0);
  for (int t = 1; t < model.good_count(); ++t) out.price[t] = out.nu[t] / out.beta;
  return out;
}

TaggedValue free_energy(const EntropyModel& model, const CanonicalPoint& point) {
  require_positive_point(model, point);
  return std::visit(
      [&](const auto& fam) -> TaggedValue {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, EntropyModel::CobbDouglasFamily>) {
          if (!model.one_component_per_good())
            throw std::domain_error("free energy needs a single flow component per good");
          double f = 0.0;
          for (const auto& block : fam.blocks)
            f += block.exponent_sum * std::log(point.values[block.key.good]) - block.sum_log_gamma;
          return {f, ValueOrder::exact, ""};
        } else if constexpr (std::is_same_v<T, EntropyModel::SubstitutesFamily>) {
          const double beta = point.values[0];
          const double nu = point.values[fam.other_good];
          const double f = -fam.n_agents * substitutes_log_zc(fam.alpha, beta, nu);
          return {f, ValueOrder::exact, ""};
        } else {
          const double beta = point.values[0];
          const double nu = point.values[fam.other_good];
          const double per_agent = (fam.alpha - 1.0) * std::log(beta + nu) + std::log(beta) +
                                   std::log(nu) - std::lgamma(fam.alpha);
          return {fam.n_agents * per_agent, ValueOrder::exact,
                  "includes the additive constant -N log Gamma(alpha)"};
        }
      },
      model.family());
}

MacroState equilibrium_amounts(const EntropyModel& model, const CanonicalPoint& point) {
  require_positive_point(model, point);
  MacroState macro;
  macro.agent_count = model.agent_count();
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, EntropyModel::CobbDouglasFamily>) {
          if (!model.one_component_per_good())
            throw std::domain_error("equilibrium amounts need a single flow component per good");
          for (const auto& block : fam.blocks)
            macro.totals[block.key] = block.exponent_sum / point.values[block.key.good];
        } else if constexpr (std::is_same_v<T, EntropyModel::SubstitutesFamily>) {
          const auto [m, g] = substitutes_means(fam.alpha, point.values[0],
                                                point.values[fam.other_good]);
          macro.totals[ConservedKey{0, {0}}] = fam.n_agents * m;
          macro.totals[ConservedKey{fam.other_good, {0}}] = fam.n_agents * g;
        } else {
          const double beta = point.values[0];
          const double nu = point.values[fam.other_good];
          const double shared = (fam.alpha - 1.0) / (beta + nu);
          macro.totals[ConservedKey{0, {0}}] = fam.n_agents * (shared + 1.0 / beta);
          macro.totals[ConservedKey{fam.other_good, {0}}] = fam.n_agents * (shared + 1.0 / nu);
        }
      },
      model.family());
  return macro;
}

LegendreResult legendre_entropy(const EntropyModel& model, const MacroState& macro) {
  if (!model.one_component_per_good())
    throw std::domain_error("legendre entropy needs a single flow component per good");
  const int dim = model.good_count();
  const auto model_keys = model.keys();
  std::vector<double> p(dim, 0.0);
  for (const auto& key : model_keys) p[key.good] = require_total(macro, key);
  for (double total : p)
    if (!(total > 0.0)) throw std::domain_error("legendre entropy needs totals > 0");

  const auto objective = [&](const std::vector<double>& theta) {
    CanonicalPoint pt;
    pt.values.resize(dim);
    for (int t = 0; t < dim; ++t) pt.values[t] = std::exp(theta[t]);
    double dot = 0.0;
    for (int t = 0; t < dim; ++t) dot += pt.values[t] * p[t];
    return dot - free_energy(model, pt).value;
  };
  const auto gradient = [&](const std::vector<double>& theta, std::vector<double>& grad_nu,
                            std::vector<double>& grad_theta) {
    CanonicalPoint pt;
    pt.values.resize(dim);
    for (int t = 0; t < dim; ++t) pt.values[t] = std::exp(theta[t]);
    const auto eq = equilibrium_amounts(model, pt);
    for (const auto& key : model_keys)
      grad_nu[key.good] = p[key.good] - eq.totals.at(key);
    for (int t = 0; t < dim; ++t) grad_theta[t] = pt.values[t] * grad_nu[t];
  };

  // Warm start: exact for Cobb-Douglas, wealth heuristic otherwise.
  std::vector<double> theta(dim, 0.0);
  if (const auto* cd = std::get_if<EntropyModel::CobbDouglasFamily>(&model.family())) {
    for (const auto& block : cd->blocks)
      theta[block.key.good] = std::log(block.exponent_sum / p[block.key.good]);
  } else {
    double alpha = 0.0;
    if (const auto* s = std::get_if<EntropyModel::SubstitutesFamily>(&model.family()))
      alpha = s->alpha;
    else
      alpha = std::get<EntropyModel::ComplementsFamily>(model.family()).alpha;
    const double wealth = p[0] + p[1];
    const double s0 = model.agent_count() * (alpha + 1.0) / wealth;
    theta.assign(dim, std::log(s0));
  }

  const double tol = kGradTolPerAgent * model.agent_count();
  std::vector<double> grad_nu(dim), grad_theta(dim);
  double fval = objective(theta);
  int iter = 0;
  for (; iter < 200; ++iter) {
    gradient(theta, grad_nu, grad_theta);
    double inf_norm = 0.0;
    for (double g : grad_nu) inf_norm = std::max(inf_norm, std::fabs(g));
    if (inf_norm < tol) {
      CanonicalPoint pt;
      pt.values.resize(dim);
      for (int t = 0; t < dim; ++t) pt.values[t] = std::exp(theta[t]);
      return {{fval, ValueOrder::extensive,
               "entropy at extensive order; additive per-economy constant not fixed"},
              pt,
              iter,
              inf_norm};
    }
    // Numeric Hessian of the log-coordinate gradient.
    std::vector<std::vector<double>> hess(dim, std::vector<double>(dim, 0.0));
    const double h = 1e-6;
    std::vector<double> gp_nu(dim), gp(dim), gm_nu(dim), gm(dim);
    for (int s = 0; s < dim; ++s) {
      auto tp = theta, tm = theta;
      tp[s] += h;
      tm[s] -= h;
      gradient(tp, gp_nu, gp);
      gradient(tm, gm_nu, gm);
      for (int t = 0; t < dim; ++t) hess[t][s] = (gp[t] - gm[t]) / (2.0 * h);
    }
    std::vector<double> rhs(dim);
    for (int t = 0; t < dim; ++t) rhs[t] = -grad_theta[t];
    std::vector<double> step;
    try {
      step = solve_linear(hess, rhs);
    } catch (const std::domain_error&) {
      step.assign(dim, 0.0);
      for (int t = 0; t < dim; ++t) step[t] = -grad_theta[t];  // gradient fallback
    }
    for (double& s : step) s = std::clamp(s, -5.0, 5.0);
    double scale = 1.0;
    bool moved = false;
    for (int back = 0; back < 60; ++back) {
      auto trial = theta;
      for (int t = 0; t < dim; ++t) trial[t] += scale * step[t];
      const double trial_f = objective(trial);
      if (trial_f <= fval) {
        theta = trial;
        fval = trial_f;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved) break;
  }
  std::ostringstream diag;
  diag << "legendre solver did not converge after " << iter << " iterations; |grad|=";
  gradient(theta, grad_nu, grad_theta);
  double inf_norm = 0.0;
  for (double g : grad_nu) inf_norm = std::max(inf_norm, std::fabs(g));
  diag << inf_norm << " tol=" << tol;
  throw NumericError(diag.str());
}

double thermo_integrate_log_z(const EntropyModel& model, const MacroState& macro, double m_from,
                              double m_to) {
  if (!(m_from > 0.0) || !(m_to > 0.0))
    throw std::domain_error("integration interval must have positive money");
  if (m_from == m_to) return 0.0;
  const auto& key = model.money_key();
  const auto beta_at = [&](double m) {
    return coolness(model, with_total(macro, key, m));
  };
  return integrate(beta_at, m_from, m_to, 1e-12);
}

PotCoolnessEstimate estimate_coolness_from_pot(std::span<const double> pot_series) {
  if (pot_series.size() < 1000)
    throw std::invalid_argument("pot fit needs at least 1000 samples");
  const auto fit = fit_exponential_rate(pot_series);
  const double ess = effective_sample_size(pot_series);
  return {fit.rate, fit.stderr_rate, ess, pot_series.size()};
}

MacroState single_component_macro(const EntropyModel& model, const std::vector<double>& totals) {
  if (static_cast<int>(totals.size()) != model.good_count())
    throw std::invalid_argument("totals length != good count");
  MacroState macro;
  macro.agent_count = model.agent_count();
  for (const auto& key : model.keys()) macro.totals[key] = totals[key.good];
  return macro;
}

double macro_money(const EntropyModel& model, const MacroState& macro) {
  return require_total(macro, model.money_key());
}

MacroState with_total(MacroState macro, const ConservedKey& key, double value) {
  macro.totals.at(key) = value;
  return macro;
}

}  // namespace thermoecon
