#include "thermoecon/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermoecon/errors.hpp"

namespace thermoecon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const CobbDouglas* as_cobb_douglas(const UtilitySpec& spec) {
  return std::get_if<CobbDouglas>(&spec);
}

}  // namespace

double slice_sample_bounded(const std::function<double(double)>& log_density, double lo, double hi,
                            double warm_start, Rng& rng) {
  if (!(hi > lo)) return lo;
  double x = std::clamp(warm_start, lo, hi);
  double fx = log_density(x);
  if (fx == kNegInf) {
    // Probe a coarse grid for support.
    bool found = false;
    for (int k = 1; k < 32 && !found; ++k) {
      const double probe = lo + (hi - lo) * k / 32.0;
      const double fp = log_density(probe);
      if (fp > kNegInf) {
        x = probe;
        fx = fp;
        found = true;
      }
    }
    if (!found) throw SamplingError("density has no support on the interval");
  }
  const double level = fx - rng.exponential(1.0);
  double left = lo, right = hi;
  for (int tries = 0; tries < 200; ++tries) {
    const double candidate = rng.uniform(left, right);
    if (log_density(candidate) >= level) return candidate;
    if (candidate < x)
      left = candidate;
    else
      right = candidate;
  }
  return x;  // shrinkage collapsed; keep the current point
}

std::pair<GoodVector, GoodVector> sample_redistribution(const UtilitySpec& u_i,
                                                        const UtilitySpec& u_j,
                                                        const GoodVector& p_i,
                                                        const GoodVector& p_j,
                                                        const std::vector<int>& goods,
                                                        const SliceParams& params, Rng& rng) {
  if (p_i.size() != p_j.size()) throw std::invalid_argument("possession vectors differ in length");
  for (int t : goods)
    if (t < 0 || static_cast<std::size_t>(t) >= p_i.size())
      throw std::invalid_argument("exchanged good index out of range");
  if (!p_i.non_negative() || !p_j.non_negative())
    throw std::invalid_argument("negative possession amount");

  GoodVector out_i = p_i, out_j = p_j;

  const auto* cd_i = as_cobb_douglas(u_i);
  const auto* cd_j = as_cobb_douglas(u_j);
  if (cd_i && cd_j) {
    for (int t : goods) {
      const double pool = p_i[t] + p_j[t];
      if (pool == 0.0) {
        out_i[t] = 0.0;
        out_j[t] = 0.0;
        continue;
      }
      const double share = pool * rng.beta(cd_i->exponents[t], cd_j->exponents[t]);
      out_i[t] = share;
      out_j[t] = pool - share;
    }
    return {out_i, out_j};
  }

  // General pairs: coordinate slice sweeps over agent i's shares.
  std::vector<double> pool(goods.size());
  for (std::size_t k = 0; k < goods.size(); ++k) pool[k] = p_i[goods[k]] + p_j[goods[k]];

  const auto log_density_at = [&]() {
    const double li = log_utility(u_i, out_i);
    if (li == kNegInf) return kNegInf;
    const double lj = log_utility(u_j, out_j);
    if (lj == kNegInf) return kNegInf;
    return li + lj;
  };

  // Warm start at the even split.
  for (std::size_t k = 0; k < goods.size(); ++k) {
    out_i[goods[k]] = 0.5 * pool[k];
    out_j[goods[k]] = pool[k] - out_i[goods[k]];
  }

  for (int sweep = 0; sweep < params.sweeps; ++sweep) {
    for (std::size_t k = 0; k < goods.size(); ++k) {
      const int t = goods[k];
      if (pool[k] == 0.0) continue;
      const double lo = params.margin * pool[k];
      const double hi = pool[k] - lo;
      if (!(hi > lo)) continue;
      const auto coord_density = [&](double x) {
        out_i[t] = x;
        out_j[t] = pool[k] - x;
        return log_density_at();
      };
      const double x = slice_sample_bounded(coord_density, lo, hi, out_i[t], rng);
      out_i[t] = x;
      out_j[t] = pool[k] - x;
    }
  }
  return {out_i, out_j};
}

double sample_money_split(const UtilitySpec& spec, const GoodVector& current, double pool,
                          const SliceParams& params, Rng& rng) {
  if (!(pool >= 0.0)) throw std::invalid_argument("pool must be >= 0");
  if (pool == 0.0) return 0.0;
  if (const auto* cd = as_cobb_douglas(spec)) {
    // Flat trader: share density x^(alpha-1) on [0, pool], i.e. Beta(alpha, 1).
    return pool * rng.beta_a1(cd->exponents[0]);
  }
  GoodVector probe = current;
  const auto log_density = [&](double x) {
    probe[0] = x;
    return log_utility(spec, probe);
  };
  const double lo = params.margin * pool;
  return slice_sample_bounded(log_density, lo, pool - lo, std::min(current[0], pool - lo), rng);
}

GoodVector sample_budget_surface(const UtilitySpec& spec, const GoodVector& current,
                                 const std::map<int, double>& prices, const SliceParams& params,
                                 Rng& rng) {
  for (const auto& [good, mu] : prices) {
    if (good <= 0 || static_cast<std::size_t>(good) >= current.size())
      throw std::invalid_argument("priced good index out of range");
    if (!(mu > 0.0)) throw std::invalid_argument("prices must be > 0");
  }
  double wealth = current[0];
  for (const auto& [good, mu] : prices) wealth += mu * current[good];
  if (!(wealth >= 0.0)) throw std::invalid_argument("wealth must be >= 0");

  GoodVector out = current;
  if (wealth == 0.0) {
    out[0] = 0.0;
    for (const auto& [good, mu] : prices) out[good] = 0.0;
    return out;
  }

  if (const auto* cd = as_cobb_douglas(spec)) {
    // Wealth shares over (money, priced goods) are Dirichlet in the exponents.
    std::vector<double> alpha{cd->exponents[0]};
    for (const auto& [good, mu] : prices) alpha.push_back(cd->exponents[good]);
    const auto share = rng.dirichlet(alpha);
    out[0] = wealth * share[0];
    std::size_t k = 1;
    for (const auto& [good, mu] : prices) out[good] = wealth * share[k++] / mu;
    return out;
  }

  // Slice sweeps over the priced-good amounts; money is the remainder.
  const auto money_left = [&]() {
    double m = wealth;
    for (const auto& [good, mu] : prices) m -= mu * out[good];
    return m;
  };
  // Warm start: wealth split evenly across money and each priced good.
  const double share0 = wealth / static_cast<double>(prices.size() + 1);
  for (const auto& [good, mu] : prices) out[good] = share0 / mu;
  out[0] = std::max(money_left(), 0.0);

  for (int sweep = 0; sweep < params.sweeps; ++sweep) {
    for (const auto& [good, mu] : prices) {
      // Budget available to this coordinate: current spend plus free money.
      const double hi_amount = out[good] + money_left() / mu;
      const double lo = params.margin * hi_amount;
      const double hi = hi_amount - lo;
      if (!(hi > lo)) continue;
      const auto coord_density = [&, good = good, mu = mu](double g) {
        out[good] = g;
        double m = wealth;
        for (const auto& [gg, mm] : prices) m -= mm * out[gg];
        out[0] = std::max(m, 0.0);
        return log_utility(spec, out);
      };
      out[good] = slice_sample_bounded(coord_density, lo, hi, out[good], rng);
    }
  }
  double m = wealth;
  for (const auto& [good, mu] : prices) m -= mu * out[good];
  out[0] = std::max(m, 0.0);
  return out;
}

GoodVector sample_budget_line(const UtilitySpec& spec, double wealth, double price, Rng& rng) {
  if (!(wealth >= 0.0)) throw std::invalid_argument("wealth must be >= 0");
  if (!(price > 0.0)) throw std::invalid_argument("price must be > 0");
  GoodVector current(2);
  current[0] = wealth;
  SliceParams params;
  return sample_budget_surface(spec, current, {{1, price}}, params, rng);
}

}  // namespace thermoecon
