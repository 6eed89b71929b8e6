#pragma once

// Independent numeric oracles for the test suites. These deliberately avoid
// the library's closed forms and its adaptive quadrature: fixed-grid
// composite Simpson with doubling, brute-force graph reachability, and
// direct moment formulas.

#include <cmath>
#include <functional>
#include <set>
#include <vector>

namespace oracles {

inline double simpson_n(const std::function<double(double)>& f, double a, double b, int n) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, int n0 = 128) {
  double prev = simpson_n(f, a, b, n0);
  for (int n = 2 * n0; n <= (1 << 22); n *= 2) {
    const double cur = simpson_n(f, a, b, n);
    if (std::fabs(cur - prev) <= rel_tol * std::fabs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

// Per-agent canonical partition integral for the two-good complements
// utility, split at the diagonal kink. Domain [0, 40/min(beta,nu)]^2.
// Substituting m = v^2 and g = u^2 removes the power singularities at the
// axes (alpha between 1 and 2 leaves fractional powers there).
inline double complements_zc_quadrature(double alpha, double beta, double nu, int n = 2048) {
  const double cap = 40.0 / std::min(beta, nu);
  const double root_cap = std::sqrt(cap);
  const auto outer = [&](double v) {
    const double m = v * v;
    const double lower = simpson_n(
        [&](double u) {
          return 2.0 * std::pow(u, 2.0 * alpha - 1.0) * std::exp(-beta * m - nu * u * u);
        },
        0.0, std::sqrt(m), n);
    const double upper = simpson_n(
        [&](double g) { return std::pow(m, alpha - 1.0) * std::exp(-beta * m - nu * g); }, m, cap,
        n);
    return 2.0 * v * (lower + upper);
  };
  return simpson_n(outer, 0.0, root_cap, n);
}

inline double substitutes_zc_quadrature(double alpha, double beta, double nu, int n = 4096) {
  const double cap = 50.0 / std::min(beta, nu);
  const auto outer = [&](double m) {
    return simpson_n(
        [&](double g) { return std::pow(m + g, alpha - 1.0) * std::exp(-beta * m - nu * g); }, 0.0,
        cap, n);
  };
  return simpson_n(outer, 0.0, cap, n);
}

// Connected components by boolean closure of the adjacency matrix.
inline std::vector<std::vector<int>> brute_components(int n,
                                                      const std::set<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& [a, b] : edges) {
    reach[a][b] = true;
    reach[b][a] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::vector<int>> components;
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<int> comp;
    for (int j = 0; j < n; ++j)
      if (reach[i][j]) {
        comp.push_back(j);
        used[j] = true;
      }
    components.push_back(comp);
  }
  return components;
}

inline double dirichlet_mean(const std::vector<double>& alpha, std::size_t i) {
  double total = 0.0;
  for (double a : alpha) total += a;
  return alpha[i] / total;
}

inline double dirichlet_second_moment(const std::vector<double>& alpha, std::size_t i) {
  double total = 0.0;
  for (double a : alpha) total += a;
  return alpha[i] * (alpha[i] + 1.0) / (total * (total + 1.0));
}

inline double dirichlet_variance(const std::vector<double>& alpha, std::size_t i) {
  const double m = dirichlet_mean(alpha, i);
  return dirichlet_second_moment(alpha, i) - m * m;
}

}  // namespace oracles
