#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "thermoecon/economy.hpp"
#include "thermoecon/partition.hpp"

using namespace thermoecon;

namespace {

// Two-part economy: money tradable across, the good is not.
Economy two_part_economy() {
  Economy eco = make_basic_economy(4, 2, CobbDouglas{{2.0, 2.0}});
  eco.structure.parts = {{0, 1}, {2, 3}};
  eco.structure.tradable[{0, 1}] = {0};
  validate_economy(eco);
  return eco;
}

}  // namespace

TEST_CASE("log utility over the three families") {
  GoodVector p{5.0, 3.0};
  CHECK(log_utility(CobbDouglas{{1.0, 1.0}}, p) == 0.0);  // flat

  GoodVector mg{3.0, 7.0};
  CHECK(log_utility(Complements{2.0, {0, 1}}, mg) == doctest::Approx(1.0986122886681098).epsilon(1e-14));

  GoodVector sub{1.0, 2.0};
  // Oracle: direct long-double evaluation of (alpha - 1) log(m + g).
  const long double direct = 2.0L * std::log(3.0L);
  CHECK(log_utility(PerfectSubstitutes{3.0, {0, 1}}, sub) ==
        doctest::Approx(static_cast<double>(direct)).epsilon(1e-15));
  CHECK(log_utility(PerfectSubstitutes{3.0, {0, 1}}, sub) ==
        doctest::Approx(2.1972245773362196).epsilon(1e-15));
}

TEST_CASE("log utility boundary conventions") {
  CHECK(log_utility(Complements{2.0, {0, 1}}, GoodVector{0.0, 5.0}) ==
        -std::numeric_limits<double>::infinity());
  CHECK(log_utility(CobbDouglas{{0.5}}, GoodVector{0.0}) ==
        std::numeric_limits<double>::infinity());
  CHECK(log_utility(CobbDouglas{{1.0}}, GoodVector{0.0}) == 0.0);
  CHECK_THROWS_AS(log_utility(CobbDouglas{{1.0, 2.0}}, GoodVector{1.0}), std::invalid_argument);
}

TEST_CASE("utility validation") {
  CHECK_THROWS_AS(validate_utility(CobbDouglas{{1.0, 0.0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_utility(PerfectSubstitutes{2.0, {1, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_utility(Complements{-1.0, {0, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate_utility(Complements{2.0, {0, 5}}, 2), std::invalid_argument);
  CHECK_NOTHROW(validate_utility(CobbDouglas{{0.5, 3.0}}, 2));
}

TEST_CASE("conserved quantities of a single part") {
  Economy eco = make_basic_economy(2, 2, CobbDouglas{{1.0, 1.0}});
  MicroState state{{GoodVector{1.0, 2.0}, GoodVector{3.0, 4.0}}};
  const auto quantities = conserved_quantities(eco, state);
  REQUIRE(quantities.size() == 2);
  CHECK(quantities[0].key.good == 0);
  CHECK(quantities[0].total == 4.0);
  CHECK(quantities[1].total == 6.0);
}

TEST_CASE("two parts, money tradable across, good locked per part") {
  Economy eco = two_part_economy();
  MicroState state{{GoodVector{1.0, 1.0}, GoodVector{1.0, 2.0}, GoodVector{2.0, 4.0},
                    GoodVector{1.0, 8.0}}};
  const auto quantities = conserved_quantities(eco, state);
  REQUIRE(quantities.size() == 3);  // M over both, G per part
  CHECK(quantities[0].key.good == 0);
  CHECK(quantities[0].key.parts == std::vector<int>{0, 1});
  CHECK(quantities[0].total == 5.0);
  CHECK(quantities[1].key.parts == std::vector<int>{0});
  CHECK(quantities[1].total == 3.0);
  CHECK(quantities[2].total == 12.0);
}

TEST_CASE("three parts with partial money contact match a brute-force oracle") {
  Economy eco = make_basic_economy(6, 1, CobbDouglas{{2.0}});
  eco.structure.parts = {{0, 1}, {2, 3}, {4, 5}};
  eco.structure.tradable[{0, 1}] = {0};  // money flows A-B only
  eco.money_component = 0;
  validate_economy(eco);

  const auto components = flow_components(eco, 0);
  const auto expected = oracles::brute_components(3, {{0, 1}});
  REQUIRE(components.size() == expected.size());
  for (std::size_t k = 0; k < components.size(); ++k) CHECK(components[k] == expected[k]);
}

TEST_CASE("conserved quantities are stable under part relabeling") {
  Economy eco = two_part_economy();
  // Same economy with the two parts listed in the opposite order.
  Economy swapped = eco;
  std::swap(swapped.structure.parts[0], swapped.structure.parts[1]);
  swapped.structure.tradable.clear();
  swapped.structure.tradable[{0, 1}] = {0};
  validate_economy(swapped);

  MicroState state{{GoodVector{1.0, 1.0}, GoodVector{1.0, 2.0}, GoodVector{2.0, 4.0},
                    GoodVector{1.0, 8.0}}};
  // Compare as sets of (good, member agent ids, total).
  const auto signature = [&](const Economy& e) {
    std::set<std::tuple<int, std::set<int>, double>> out;
    for (const auto& q : conserved_quantities(e, state)) {
      std::set<int> members;
      for (int p : q.key.parts)
        for (int id : e.structure.parts[p]) members.insert(id);
      out.insert({q.key.good, members, q.total});
    }
    return out;
  };
  CHECK(signature(eco) == signature(swapped));
}

TEST_CASE("macro state recompute and validation") {
  Economy eco = make_basic_economy(2, 2, CobbDouglas{{1.0, 1.0}});
  MicroState state{{GoodVector{1.0, 2.0}, GoodVector{3.0, 4.0}}};
  const MacroState macro = macro_state_of(eco, state);
  CHECK(macro.agent_count == 2);
  CHECK(macro.totals.at(ConservedKey{0, {0}}) == 4.0);
  CHECK(macro.totals.at(ConservedKey{1, {0}}) == 6.0);

  MicroState bad{{GoodVector{-1.0, 2.0}, GoodVector{3.0, 4.0}}};
  CHECK_THROWS_AS(macro_state_of(eco, bad), std::invalid_argument);
}

TEST_CASE("macro totals are invariant under agent permutation within a part") {
  Economy eco = make_basic_economy(4, 2, CobbDouglas{{2.0, 3.0}});
  MicroState state{{GoodVector{1.0, 0.5}, GoodVector{2.0, 1.5}, GoodVector{0.25, 4.0},
                    GoodVector{3.0, 0.125}}};
  MicroState permuted = state;
  std::rotate(permuted.possessions.begin(), permuted.possessions.begin() + 1,
              permuted.possessions.end());
  const auto a = macro_state_of(eco, state);
  const auto b = macro_state_of(eco, permuted);
  for (const auto& [key, total] : a.totals) CHECK(b.totals.at(key) == total);
}

TEST_CASE("set_contact merges and restores flow components") {
  Economy eco = make_basic_economy(4, 2, CobbDouglas{{2.0, 2.0}});
  eco.structure.parts = {{0, 1}, {2, 3}};
  eco.money_component = 0;
  // Isolated parts: two money components.
  CHECK(flow_components(eco, 0).size() == 2);

  const Economy joined = set_contact(eco, 0, 1, {0}, true);
  CHECK(flow_components(joined, 0).size() == 1);

  // Disabling an absent contact is a no-op.
  const Economy same = set_contact(eco, 0, 1, {1}, false);
  CHECK(same.structure.tradable == eco.structure.tradable);

  // Enable then disable restores the original structure.
  const Economy round = set_contact(joined, 0, 1, {0}, false);
  CHECK(round.structure.tradable == eco.structure.tradable);

  CHECK_THROWS_AS(set_contact(eco, 0, 7, {0}, true), std::invalid_argument);
  CHECK_THROWS_AS(set_contact(eco, 1, 1, {0}, true), std::invalid_argument);
}

TEST_CASE("set_contact changes components, never totals") {
  Economy eco = two_part_economy();
  MicroState state{{GoodVector{1.0, 1.0}, GoodVector{1.0, 2.0}, GoodVector{2.0, 4.0},
                    GoodVector{1.0, 8.0}}};
  const Economy more = set_contact(eco, 0, 1, {1}, true);
  double before = 0.0, after = 0.0;
  for (const auto& q : conserved_quantities(eco, state)) before += q.total;
  for (const auto& q : conserved_quantities(more, state)) after += q.total;
  CHECK(before == after);
  CHECK(conserved_quantities(more, state).size() == 2);
}

TEST_CASE("scale_economy identity and replication") {
  Economy eco = make_basic_economy(3, 2, CobbDouglas{{2.0, 3.0}});
  const Economy same = scale_economy(eco, 1.0);
  CHECK(same.agent_count() == 3);

  const Economy doubled = scale_economy(eco, 2.0);
  CHECK(doubled.agent_count() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(doubled.agents[i].utility == eco.agents[i % 3].utility);

  CHECK_THROWS_AS(scale_economy(eco, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_economy(eco, -2.0), std::invalid_argument);
}

TEST_CASE("scaling preserves the entropy density at extensive order") {
  // Homogeneous population: zeta(p) depends on N only through O(log N / N).
  Economy eco = make_basic_economy(100, 1, CobbDouglas{{2.0}});
  const auto zeta = [&](const Economy& e, double per_agent_money) {
    const EntropyModel model = EntropyModel::from_economy(e);
    const MacroState macro =
        single_component_macro(model, {per_agent_money * e.agent_count()});
    return log_partition(model, macro).value / e.agent_count();
  };
  const double base = zeta(eco, 2.0);
  const double half = zeta(scale_economy(eco, 0.5), 2.0);
  const double twice = zeta(scale_economy(eco, 2.0), 2.0);
  CHECK(std::fabs(half - base) < 2.0 * std::log(50.0) / 50.0);
  CHECK(std::fabs(twice - base) < 2.0 * std::log(100.0) / 100.0);

  // Doubling a tiny homogeneous economy doubles every total.
  Economy small = make_basic_economy(3, 2, CobbDouglas{{2.0, 3.0}});
  const Economy big = scale_economy(small, 2.0);
  const MicroState state = equal_split_state(big, GoodVector{12.0, 6.0});
  const auto macro = macro_state_of(big, state);
  CHECK(macro.totals.at(ConservedKey{0, {0}}) == doctest::Approx(12.0));
}

TEST_CASE("repeated scaling composes when the roundings agree") {
  Economy eco = make_basic_economy(10, 1, CobbDouglas{{2.0}});
  const Economy ab = scale_economy(scale_economy(eco, 2.0), 1.5);
  const Economy direct = scale_economy(eco, 3.0);
  CHECK(ab.agent_count() == direct.agent_count());
}

TEST_CASE("ring topology connects neighbours only") {
  Economy eco = make_basic_economy(5, 1, CobbDouglas{{2.0}});
  eco.encounters = Ring{2.0};
  validate_economy(eco);
  CHECK(eco.encounter_rate(0, 1) == 2.0);
  CHECK(eco.encounter_rate(0, 4) == 2.0);  // wrap-around
  CHECK(eco.encounter_rate(0, 2) == 0.0);
  CHECK(eco.encounter_rate(3, 3) == 0.0);
}

TEST_CASE("economy validation catches disconnected money components") {
  Economy eco = make_basic_economy(4, 1, CobbDouglas{{2.0}});
  ExplicitRates rates;
  rates.k.assign(4, std::vector<double>(4, 0.0));
  // Only 0-1 and 2-3 meet: the single money component is not connected.
  rates.k[0][1] = rates.k[1][0] = 1.0;
  rates.k[2][3] = rates.k[3][2] = 1.0;
  eco.encounters = rates;
  CHECK_THROWS_AS(validate_economy(eco), std::invalid_argument);

  rates.k[1][2] = rates.k[2][1] = 0.5;
  eco.encounters = rates;
  CHECK_NOTHROW(validate_economy(eco));
}
