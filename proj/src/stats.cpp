#include "mbm/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "mbm/errors.hpp"

namespace mbm::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile needs p in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

namespace {

void wilson(std::size_t count, std::size_t n, double confidence, double& lo, double& hi) {
  if (n == 0) throw DomainError("Wilson interval needs n > 0");
  if (count > n) throw DomainError("Wilson interval needs count <= n");
  const double z = normal_quantile(confidence);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(count) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

}  // namespace

double wilson_upper(std::size_t count, std::size_t n, double confidence) {
  double lo, hi;
  wilson(count, n, confidence, lo, hi);
  return hi;
}

double wilson_lower(std::size_t count, std::size_t n, double confidence) {
  double lo, hi;
  wilson(count, n, confidence, lo, hi);
  return lo;
}

double mean_upper_limit(std::span<const double> samples, double confidence) {
  if (samples.size() < 2) throw DomainError("mean_upper_limit needs at least two samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return mean + normal_quantile(confidence) * sd / std::sqrt(n);
}

double kolmogorov_pvalue(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double sum = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_normal(std::span<const double> samples) {
  if (samples.size() < kKsMinSamples) throw DomainError("ks_normal needs at least 50 samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double F = normal_cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_pvalue(std::sqrt(n) * d)};
}

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return sorted_quantile(values, 0.5);
}

}  // namespace mbm::stats
