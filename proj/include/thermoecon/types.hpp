#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace thermoecon {

// Amounts of each good type; good 0 is money by convention.
struct GoodVector {
  std::vector<double> amounts;

  GoodVector() = default;
  explicit GoodVector(std::size_t n, double value = 0.0) : amounts(n, value) {}
  GoodVector(std::initializer_list<double> init) : amounts(init) {}

  std::size_t size() const { return amounts.size(); }
  double& operator[](std::size_t t) { return amounts[t]; }
  double operator[](std::size_t t) const { return amounts[t]; }
  bool non_negative() const;
  double sum() const;

  bool operator==(const GoodVector&) const = default;
};

// u(p) = prod_t p_t^(alpha_t - 1)
struct CobbDouglas {
  std::vector<double> exponents;
  bool operator==(const CobbDouglas&) const = default;
};

// u(p) = (p_a + p_b)^(alpha - 1), the two goods interchangeable
struct PerfectSubstitutes {
  double alpha = 1.0;
  std::array<int, 2> goods{0, 1};
  bool operator==(const PerfectSubstitutes&) const = default;
};

// u(p) = min(p_a, p_b)^(alpha - 1), the two goods useful only matched
struct Complements {
  double alpha = 1.0;
  std::array<int, 2> goods{0, 1};
  bool operator==(const Complements&) const = default;
};

using UtilitySpec = std::variant<CobbDouglas, PerfectSubstitutes, Complements>;

struct Agent {
  int id = 0;
  UtilitySpec utility;
};

// Throws std::invalid_argument on non-positive exponents, duplicated or
// out-of-range good indices, or an exponent list of the wrong length.
void validate_utility(const UtilitySpec& spec, int good_count);

// log u(p). Returns -inf where u vanishes. +inf can occur only as the
// limit of an integrable singularity (alpha < 1 at a zero amount); the
// samplers never evaluate on the boundary, so it never propagates.
double log_utility(const UtilitySpec& spec, const GoodVector& p);

std::string utility_family_name(const UtilitySpec& spec);

bool is_cobb_douglas(const UtilitySpec& spec);

}  // namespace thermoecon
