#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "thermoecon/rng.hpp"
#include "thermoecon/types.hpp"

namespace thermoecon {

struct SliceParams {
  int sweeps = 20;        // full coordinate sweeps per draw
  double margin = 1e-12;  // relative keep-out near interval ends; biases
                          // alpha < 1 boundary singularities by O(margin)
};

// One draw from a log-density on a bounded interval by slice shrinkage.
// Throws SamplingError if no point of positive density can be located.
double slice_sample_bounded(const std::function<double(double)>& log_density, double lo, double hi,
                            double warm_start, Rng& rng);

// Pool the exchanged goods of two agents and split them with density
// proportional to u_i(p_i') u_j(p_j'). Exact per-good Beta split when both
// agents are Cobb-Douglas; coordinate slice sampling otherwise. Shares are
// written as (x, pool - x), so each pooled total is preserved by
// construction; unexchanged goods pass through untouched.
std::pair<GoodVector, GoodVector> sample_redistribution(const UtilitySpec& u_i,
                                                        const UtilitySpec& u_j,
                                                        const GoodVector& p_i,
                                                        const GoodVector& p_j,
                                                        const std::vector<int>& goods,
                                                        const SliceParams& params, Rng& rng);

// Agent pools money with the trader's pot (flat trader utility) and keeps a
// share with density proportional to its own utility; returns the share.
double sample_money_split(const UtilitySpec& spec, const GoodVector& current, double pool,
                          const SliceParams& params, Rng& rng);

// Resample (money, priced goods) on the budget surface
// {m + sum mu_t g_t = wealth(current)}; unpriced goods untouched. Exact
// Dirichlet split of wealth for Cobb-Douglas, slice sampling otherwise.
GoodVector sample_budget_surface(const UtilitySpec& spec, const GoodVector& current,
                                 const std::map<int, double>& prices, const SliceParams& params,
                                 Rng& rng);

// Two-good convenience: money (good 0) plus good 1 at scalar price.
GoodVector sample_budget_line(const UtilitySpec& spec, double wealth, double price, Rng& rng);

}  // namespace thermoecon
