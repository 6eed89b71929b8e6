#include "thermoecon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoecon {

namespace {

double inc_beta_cf(double a, double b, double x) {
  // Lentz's continued fraction for the incomplete beta.
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("reg_inc_beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * inc_beta_cf(a, b, x) / a;
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("reg_lower_gamma needs a > 0");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) {
    // Series.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // Continued fraction for Q(a, x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

double beta_cdf(double a, double b, double x) { return reg_inc_beta(a, b, x); }

double chi_squared_sf(double x, int dof) {
  if (x <= 0.0) return 1.0;
  return 1.0 - reg_lower_gamma(0.5 * dof, 0.5 * x);
}

double kolmogorov_sf(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return {d, kolmogorov_sf(lambda)};
}

double RunningMoments::stddev() const { return std::sqrt(variance()); }

double RunningMoments::stderr_mean() const {
  return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

double batch_means_stderr(std::span<const double> series, int n_batches) {
  if (series.size() < static_cast<std::size_t>(2 * n_batches))
    n_batches = std::max(2, static_cast<int>(series.size() / 2));
  const std::size_t batch = series.size() / n_batches;
  RunningMoments batches;
  for (int b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) s += series[i];
    batches.add(s / static_cast<double>(batch));
  }
  return batches.stddev() / std::sqrt(static_cast<double>(n_batches));
}

double effective_sample_size(std::span<const double> series, int max_lag) {
  const std::size_t n = series.size();
  if (n < 4) return static_cast<double>(n);
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double x : series) c0 += (x - mean) * (x - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return static_cast<double>(n);
  double tau = 1.0;
  const int lag_cap = std::min<std::size_t>(max_lag, n / 2);
  for (int lag = 1; lag <= lag_cap; ++lag) {
    double ck = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) ck += (series[i] - mean) * (series[i + lag] - mean);
    ck /= static_cast<double>(n);
    const double rho = ck / c0;
    if (rho <= 0.0) break;
    tau += 2.0 * rho;
  }
  return static_cast<double>(n) / tau;
}

RateFit fit_exponential_rate(std::span<const double> samples, int jackknife_blocks) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("rate fit needs at least two samples");
  double total = 0.0;
  for (double x : samples) {
    if (!(x >= 0.0)) throw std::invalid_argument("rate fit needs non-negative samples");
    total += x;
  }
  if (!(total > 0.0)) throw std::domain_error("degenerate fit: all samples zero");
  const double rate = static_cast<double>(n) / total;

  const int blocks = std::min<int>(jackknife_blocks, static_cast<int>(n));
  const std::size_t block = n / blocks;
  std::vector<double> leave_out;
  leave_out.reserve(blocks);
  for (int b = 0; b < blocks; ++b) {
    double block_sum = 0.0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) block_sum += samples[i];
    const double rest = total - block_sum;
    const double rest_n = static_cast<double>(n - block);
    if (rest > 0.0) leave_out.push_back(rest_n / rest);
  }
  RunningMoments jk;
  for (double r : leave_out) jk.add(r);
  const double m = static_cast<double>(leave_out.size());
  const double se = m > 1 ? std::sqrt((m - 1.0) / m * jk.m2) : 0.0;
  return {rate, se};
}

namespace {
double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  const double tol = std::max(std::fabs(whole), 1e-12) * rel_tol;
  return adaptive(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-300) throw std::domain_error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

}  // namespace thermoecon
