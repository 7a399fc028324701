#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mbm::stats {

double normal_cdf(double x);
/// Standard normal p-quantile, p in (0,1).
double normal_quantile(double p);

/// One-sided Wilson score limits for a binomial proportion count/n at the
/// given confidence (e.g. 0.99 uses z_{0.99}).
double wilson_upper(std::size_t count, std::size_t n, double confidence = 0.99);
double wilson_lower(std::size_t count, std::size_t n, double confidence = 0.99);

/// One-sided upper confidence limit for a mean: mean + z_conf * sd / sqrt(n).
double mean_upper_limit(std::span<const double> samples, double confidence = 0.99);

/// Asymptotic Kolmogorov tail P(K > lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
/// truncated when terms drop below 1e-12. Clamped to [0,1].
double kolmogorov_pvalue(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Minimum sample size accepted by ks_normal.
inline constexpr std::size_t kKsMinSamples = 50;

/// One-sample Kolmogorov-Smirnov test against N(0,1); p-value from the
/// asymptotic series at sqrt(n) D. Throws DomainError for fewer than 50 samples.
KsResult ks_normal(std::span<const double> samples);

/// Linear-interpolated quantile (type 7) of already sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

double median(std::vector<double> values);

}  // namespace mbm::stats
