#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mbm/covariance.hpp"
#include "mbm/hurst.hpp"
#include "mbm/sample_path.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

/// X_t = theta t + Y_t.
struct LinearModel {
  double theta = 0.0;
  HurstFunction hurst;
};

/// X_t = x0 + theta int_0^t X_s ds + Y_t, theta >= 0, h3 > 1/2.
struct OUModel {
  OUModel(double theta, double x0, HurstFunction hurst);
  double theta;
  double x0;
  HurstFunction hurst;
};

struct ConfidenceInterval {
  double lo;
  double hi;
  double level;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct EstimatorResult {
  double estimate = 0.0;
  double T = 0.0;
  /// Normalization of the error statistic: (estimate - theta) / pivot_scale ~ N(0,1).
  std::optional<double> pivot_scale;
  /// (estimate - theta) / pivot_scale when the true theta was supplied.
  std::optional<double> pivot;
  std::optional<ConfidenceInterval> ci;
  nlohmann::json diagnostics = nlohmann::json::object();

  nlohmann::json to_json() const;
};

SamplePath linear_from_noise(double theta, const SamplePath& noise);
SamplePath simulate_linear(const LinearModel& m, double horizon, std::size_t n,
                           std::uint64_t seed);

/// Point estimate X_T / T, pivot scale C(H_T) / T^{1 - H_T}, interval
/// estimate +- scale z_{(1+level)/2}.
EstimatorResult estimate_linear(const SamplePath& x, const HurstFunction& h, double level = 0.95,
                                std::optional<double> true_theta = std::nullopt);

/// X_t = x0 e^{theta t} + theta e^{theta t} int_0^t e^{-theta s} Y_s ds + Y_t,
/// the integral by cumulative trapezoid on the path grid.
SamplePath ou_from_noise(double theta, double x0, const SamplePath& noise);
SamplePath simulate_ou(const OUModel& m, double horizon, std::size_t n, std::uint64_t seed);

enum class IntegrationMethod { fractional, riemann };
std::string_view to_string(IntegrationMethod m);
IntegrationMethod integration_method_from_string(std::string_view s);

/// Least-squares estimator int X dX / int X^2 ds. The fractional numerator is
/// summed over unit blocks; alpha <= 0 selects the default order for h.
EstimatorResult estimate_ou(const SamplePath& x, const HurstFunction& h,
                            IntegrationMethod method = IntegrationMethod::fractional,
                            double alpha = 0.0);

/// Trapezoid of v^2 on the path grid.
double trapezoid_square(const SamplePath& x);

/// Variance of T^{-1} int_0^T Y_s ds: T^{-2} times the double trapezoid of
/// the covariance on an (n+1) x (n+1) grid.
double sigma_T_squared(const HurstFunction& h, double T, std::size_t n);

}  // namespace mbm
