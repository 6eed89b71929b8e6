#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace thermoecon {

// Regularized incomplete beta I_x(a, b) by continued fraction.
double reg_inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

// CDF helpers used by statistical tests.
double beta_cdf(double a, double b, double x);
double chi_squared_sf(double x, int dof);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test. `samples` need not be sorted.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

double kolmogorov_sf(double lambda);

struct RunningMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stddev() const;
  double stderr_mean() const;
};

// Standard error of the mean of a correlated series via batch means.
double batch_means_stderr(std::span<const double> series, int n_batches = 50);

// Effective sample size from the initial-positive-sequence autocorrelation sum.
double effective_sample_size(std::span<const double> series, int max_lag = 1000);

struct RateFit {
  double rate = 0.0;
  double stderr_rate = 0.0;
};

// MLE rate of an exponential sample (1 / mean) with jackknife standard error.
RateFit fit_exponential_rate(std::span<const double> samples, int jackknife_blocks = 50);

// Adaptive Simpson quadrature.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 40);

// Dense LU solve for the small Newton systems; throws on singularity.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b);

// FNV-1a, used to fingerprint configs in reports.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace thermoecon
