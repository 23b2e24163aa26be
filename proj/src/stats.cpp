#include "fraglab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace fraglab::stats {

double kahan_total(std::span<const double> values) {
  KahanSum s;
  for (const double v : values) s.add(v);
  return s.value();
}

double RunningMoments::standard_error() const {
  return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (Lentz's algorithm).
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_p: a>0, x>=0 required");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_q: a>0, x>=0 required");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_squared_sf(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_goodness_of_fit(std::span<const double> observed,
                                           std::span<const double> expected,
                                           double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_goodness_of_fit: size mismatch");
  std::vector<double> obs;
  std::vector<double> exp;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (exp.empty()) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
    } else {
      obs.back() += acc_o;
      exp.back() += acc_e;
    }
  }
  ChiSquareResult result;
  result.bins_used = obs.size();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = obs[i] - exp[i];
    result.statistic += d * d / exp[i];
  }
  result.df = obs.size() > 1 ? obs.size() - 1 : 1;
  result.p_value = chi_squared_sf(result.statistic, static_cast<double>(result.df));
  return result;
}

ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> sample_a,
                                      std::span<const std::int64_t> sample_b,
                                      double min_pooled) {
  if (sample_a.empty() || sample_b.empty())
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  std::map<std::int64_t, std::pair<double, double>> counts;
  for (const auto v : sample_a) counts[v].first += 1.0;
  for (const auto v : sample_b) counts[v].second += 1.0;

  // Merge adjacent value-bins until the pooled count is large enough.
  std::vector<std::pair<double, double>> bins;
  double acc_a = 0.0, acc_b = 0.0;
  for (const auto& [value, c] : counts) {
    (void)value;
    acc_a += c.first;
    acc_b += c.second;
    if (acc_a + acc_b >= min_pooled) {
      bins.emplace_back(acc_a, acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a > 0.0 || acc_b > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(acc_a, acc_b);
    } else {
      bins.back().first += acc_a;
      bins.back().second += acc_b;
    }
  }

  const double na = static_cast<double>(sample_a.size());
  const double nb = static_cast<double>(sample_b.size());
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  ChiSquareResult result;
  result.bins_used = bins.size();
  for (const auto& [a, b] : bins) {
    const double d = ka * a - kb * b;
    result.statistic += d * d / (a + b);
  }
  result.df = bins.size() > 1 ? bins.size() - 1 : 1;
  result.p_value = chi_squared_sf(result.statistic, static_cast<double>(result.df));
  return result;
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_two_sample(std::span<const double> sample_a, std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> a(sample_a.begin(), sample_a.end());
  std::vector<double> b(sample_b.begin(), sample_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult result;
  result.statistic = d;
  result.n_a = a.size();
  result.n_b = b.size();
  const double ne = na * nb / (na + nb);
  result.p_value = kolmogorov_sf((std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d);
  return result;
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  KsResult result;
  result.statistic = d;
  result.n_a = s.size();
  result.n_b = 0;
  result.p_value = kolmogorov_sf((std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d);
  return result;
}

double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_upper: zero trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + half) / (1.0 + z2 / n));
}

}  // namespace fraglab::stats
