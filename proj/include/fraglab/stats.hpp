#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fraglab::stats {

/// Compensated (Neumaier) summation; keeps mass-balance checks well under
/// the 1e-12 tolerance even for 1e6-term sums.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double kahan_total(std::span<const double> values);

/// Streaming mean / standard error over replicates.
struct RunningMoments {
  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const;

  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

/// Regularized lower incomplete gamma P(a,x); Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-squared distribution with df degrees.
double chi_squared_sf(double statistic, double df);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
  std::size_t bins_used = 0;
};

/// Goodness of fit of observed counts against expected counts (same total).
/// Bins are greedily merged left-to-right until each expected count is at
/// least min_expected, which keeps the asymptotic chi-square approximation
/// honest in thin tails.
ChiSquareResult chi_square_goodness_of_fit(std::span<const double> observed,
                                           std::span<const double> expected,
                                           double min_expected = 5.0);

/// Two-sample chi-square over a shared binning of integer-valued samples.
ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> sample_a,
                                      std::span<const std::int64_t> sample_b,
                                      double min_pooled = 10.0);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_sf(double lambda);

/// Two-sample KS; samples are copied and sorted internally.
KsResult ks_two_sample(std::span<const double> sample_a, std::span<const double> sample_b);

/// One-sample KS against a cdf.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Wilson-score upper confidence limit for a binomial proportion
/// (default z for a one-sided 97.5% / two-sided 95% interval).
double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace fraglab::stats
