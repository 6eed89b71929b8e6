#include "thermoecon/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace thermoecon {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// (alpha - 1) * log(x) with the limit conventions at x = 0.
double power_log_term(double alpha, double x) {
  if (alpha == 1.0) return 0.0;
  if (x > 0.0) return (alpha - 1.0) * std::log(x);
  return alpha > 1.0 ? -kInf : kInf;
}
}  // namespace

bool GoodVector::non_negative() const {
  for (double a : amounts)
    if (!(a >= 0.0)) return false;
  return true;
}

double GoodVector::sum() const {
  double s = 0.0;
  for (double a : amounts) s += a;
  return s;
}

void validate_utility(const UtilitySpec& spec, int good_count) {
  if (const auto* cd = std::get_if<CobbDouglas>(&spec)) {
    if (static_cast<int>(cd->exponents.size()) != good_count)
      throw std::invalid_argument("cobb_douglas exponent list length != good count");
    for (double a : cd->exponents)
      if (!(a > 0.0)) throw std::invalid_argument("cobb_douglas exponents must be > 0");
    return;
  }
  const auto check_pair = [&](double alpha, const std::array<int, 2>& goods, const char* name) {
    if (!(alpha > 0.0)) throw std::invalid_argument(std::string(name) + " alpha must be > 0");
    if (goods[0] == goods[1]) throw std::invalid_argument(std::string(name) + " good indices must differ");
    for (int g : goods)
      if (g < 0 || g >= good_count) throw std::invalid_argument(std::string(name) + " good index out of range");
  };
  if (const auto* ps = std::get_if<PerfectSubstitutes>(&spec)) {
    check_pair(ps->alpha, ps->goods, "substitutes");
  } else {
    const auto& c = std::get<Complements>(spec);
    check_pair(c.alpha, c.goods, "complements");
  }
}

double log_utility(const UtilitySpec& spec, const GoodVector& p) {
  return std::visit(
      [&](const auto& u) -> double {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, CobbDouglas>) {
          if (p.size() != u.exponents.size())
            throw std::invalid_argument("good vector length != exponent list length");
          double s = 0.0;
          for (std::size_t t = 0; t < p.size(); ++t) {
            const double term = power_log_term(u.exponents[t], p[t]);
            if (term == -kInf) return -kInf;
            s += term;
          }
          return s;
        } else if constexpr (std::is_same_v<T, PerfectSubstitutes>) {
          if (static_cast<std::size_t>(u.goods[0]) >= p.size() ||
              static_cast<std::size_t>(u.goods[1]) >= p.size())
            throw std::invalid_argument("good vector too short for utility spec");
          return power_log_term(u.alpha, p[u.goods[0]] + p[u.goods[1]]);
        } else {
          if (static_cast<std::size_t>(u.goods[0]) >= p.size() ||
              static_cast<std::size_t>(u.goods[1]) >= p.size())
            throw std::invalid_argument("good vector too short for utility spec");
          return power_log_term(u.alpha, std::min(p[u.goods[0]], p[u.goods[1]]));
        }
      },
      spec);
}

std::string utility_family_name(const UtilitySpec& spec) {
  if (std::holds_alternative<CobbDouglas>(spec)) return "cobb_douglas";
  if (std::holds_alternative<PerfectSubstitutes>(spec)) return "substitutes";
  return "complements";
}

bool is_cobb_douglas(const UtilitySpec& spec) {
  return std::holds_alternative<CobbDouglas>(spec);
}

}  // namespace thermoecon
