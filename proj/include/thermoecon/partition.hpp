#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "thermoecon/economy.hpp"

namespace thermoecon {

// Closed forms hold exactly at finite N for some families; elsewhere values
// are valid to extensive order only (per-agent error O(log N / N)).
enum class ValueOrder { exact, extensive };

struct TaggedValue {
  double value = 0.0;
  ValueOrder order = ValueOrder::exact;
  std::string note;
};

// Conjugate intensive variables: values[0] is beta (money), values[t] is
// nu_t for good t. All components positive.
struct CanonicalPoint {
  std::vector<double> values;

  double beta() const { return values.at(0); }
};

// Analytic model of log Z for one utility-family population.
class EntropyModel {
 public:
  struct CobbDouglasBlock {
    ConservedKey key;
    double exponent_sum = 0.0;    // A = sum_i alpha_i over the component
    double sum_log_gamma = 0.0;   // sum_i log Gamma(alpha_i)
    std::vector<double> exponents;
    bool operator==(const CobbDouglasBlock&) const = default;
  };
  struct CobbDouglasFamily {
    std::vector<CobbDouglasBlock> blocks;
    std::optional<ConservedKey> money_key;
    bool operator==(const CobbDouglasFamily&) const = default;
  };
  struct SubstitutesFamily {
    int n_agents = 0;
    double alpha = 1.0;
    int other_good = 1;
    bool operator==(const SubstitutesFamily&) const = default;
  };
  struct ComplementsFamily {
    int n_agents = 0;
    double alpha = 1.0;
    int other_good = 1;
    bool operator==(const ComplementsFamily&) const = default;
  };
  using Family = std::variant<CobbDouglasFamily, SubstitutesFamily, ComplementsFamily>;

  EntropyModel(Family family, int good_count, int agent_count);

  // Requires a homogeneous utility family across agents.
  static EntropyModel from_economy(const Economy& eco);

  // Single-part population with per-agent exponent vectors.
  static EntropyModel cobb_douglas(const std::vector<std::vector<double>>& exponents);
  static EntropyModel substitutes(int n_agents, double alpha);
  static EntropyModel complements(int n_agents, double alpha);

  const Family& family() const { return family_; }
  int good_count() const { return good_count_; }
  int agent_count() const { return agent_count_; }
  std::string family_name() const;

  std::vector<ConservedKey> keys() const;
  const ConservedKey& money_key() const;         // throws if ambiguous
  bool one_component_per_good() const;

  bool operator==(const EntropyModel&) const = default;

 private:
  Family family_;
  int good_count_;
  int agent_count_;
};

struct GoodValues {
  double beta = 0.0;
  std::vector<double> nu;     // per good; nu[0] == beta
  std::vector<double> price;  // nu/beta; price[0] == 1
};

struct LegendreResult {
  TaggedValue entropy;
  CanonicalPoint minimizer;
  int iterations = 0;
  double grad_inf_norm = 0.0;
};

struct PotCoolnessEstimate {
  double beta = 0.0;
  double stderr_beta = 0.0;
  double effective_samples = 0.0;
  std::size_t n = 0;
};

// log Z(P). Exact for Cobb-Douglas populations (per conserved component);
// substitutes/complements have no closed microcanonical form at finite N
// and are computed through the Legendre transform at extensive order.
TaggedValue log_partition(const EntropyModel& model, const MacroState& macro);

// beta = d log Z / dM for the distinguished money component.
double coolness(const EntropyModel& model, const MacroState& macro);

// (beta, nu_t = d log Z / dG_t, price mu = nu / beta); requires a single
// flow component per good.
GoodValues good_values(const EntropyModel& model, const MacroState& macro);

// F(beta, nu) = -log Z_c. Exact closed forms for all three families.
TaggedValue free_energy(const EntropyModel& model, const CanonicalPoint& point);

// Gradient of F: the mean totals conjugate to (beta, nu).
MacroState equilibrium_amounts(const EntropyModel& model, const CanonicalPoint& point);

// S(P) = min over positive (beta, nu) of (nu . P - F); damped Newton in
// log coordinates, convergence at |P - grad F|_inf < 1e-10 N.
LegendreResult legendre_entropy(const EntropyModel& model, const MacroState& macro);

// Delta log Z = integral of beta(M) dM over the money total.
double thermo_integrate_log_z(const EntropyModel& model, const MacroState& macro, double m_from,
                              double m_to);

// Exponential-rate fit of a pot-occupancy series; valid when the pot is
// extensively small relative to the economy's money.
PotCoolnessEstimate estimate_coolness_from_pot(std::span<const double> pot_series);

// Macro state over the model's keys (single part): totals[t] per good.
MacroState single_component_macro(const EntropyModel& model, const std::vector<double>& totals);

double macro_money(const EntropyModel& model, const MacroState& macro);
MacroState with_total(MacroState macro, const ConservedKey& key, double value);

}  // namespace thermoecon
