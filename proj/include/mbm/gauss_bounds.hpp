#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbm/series.hpp"

namespace mbm {

/// Breakpoints b_k (b_0 = 0, increasing to infinity) and weights a_k = a(b_k)
/// used to split the half-axis into blocks [b_k, b_{k+1}].
struct PartitionScheme {
  std::function<double(std::size_t)> breakpoint;
  std::function<double(std::size_t)> weight;

  static PartitionScheme from_weight_function(std::function<double(std::size_t)> b,
                                              std::function<double(double)> a);

  double spacing(std::size_t k) const { return breakpoint(k + 1) - breakpoint(k); }

  /// Checks b_0 = 0, strictly increasing b, positive increasing a, and
  /// (optionally) spacing >= 1 on the first `terms` entries.
  void validate(std::size_t terms = 64, bool unit_spacing = true) const;
};

/// Per-block Hölder constants c_k, sup standard deviations m_k, exponent beta.
struct HolderModulus {
  std::function<double(std::size_t)> c;
  std::function<double(std::size_t)> m;
  double beta = 1.0;
};

/// Tail bound of the form P(sup > u) <= prefactor(theta) * exp(-u^2 (1-theta)^2 / (2 S^2)).
///
/// S is the series constant controlling the Gaussian rate (A for weighted
/// suprema, A*B for the increment statistic). The prefactor is kept in log
/// form since it routinely exceeds the double range.
class TailBound {
 public:
  using LogPrefactor = std::function<double(double theta)>;

  TailBound(std::string kind, double A, double scale, double theta, LogPrefactor log_prefactor,
            nlohmann::json params);

  const std::string& kind() const { return kind_; }
  double A() const { return A_; }
  double scale() const { return scale_; }
  double theta() const { return theta_; }
  double log_prefactor() const { return log_prefactor_; }
  double log_prefactor_at(double theta) const { return log_prefactor_fn_(theta); }
  /// May be +inf when the log prefactor exceeds the double range.
  double prefactor() const;
  /// Coefficient of u^2 in the exponent at the stored theta.
  double rate() const;
  /// Lower end of the domain of the optimized-theta form (u > scale).
  double validity() const { return scale_; }
  const nlohmann::json& params() const { return params_; }

  /// Bound at the stored theta.
  double evaluate(double u) const;
  /// Bound at theta(u) = 1 - sqrt(1 - S^2/u^2); +inf for u <= S.
  double evaluate_optimized(double u) const;
  /// Smallest of the stored-theta, optimized-theta and numerically
  /// minimized (golden section on (0.01, 0.99), tol 1e-4) values.
  double evaluate_best(double u) const;
  /// Minimizer used by evaluate_best (ties go to the smaller theta).
  double best_theta(double u) const;

  nlohmann::json to_json() const;

 private:
  double log_value(double theta, double u) const;

  std::string kind_;
  double A_;
  double scale_;
  double theta_;
  LogPrefactor log_prefactor_fn_;
  double log_prefactor_;
  nlohmann::json params_;
};

/// Right side of the exponential-moment bound on an interval with
/// sigma(h) = c h^beta:
/// 2^{2/beta-1} exp(lambda^2 m^2 / (2 (1-theta)^2)) (2^{2/beta-1} length c^{1/beta} / (theta m)^{1/beta} + 1).
double interval_mgf_bound(double m, double c, double beta, double length, double theta,
                          double lambda);

/// Exponential-moment bound on the strip {a <= t1 <= b, t1 - delta <= t2 <= t1}
/// with sigma(h) = c h^beta and d = max(2/(b-a), 4/delta).
double strip_mgf_bound(double a, double b, double delta, double m, double c, double beta,
                       double eps, double theta, double lambda);

/// A = sum_k m_k / a_k.
SeriesSum weighted_series_A(const PartitionScheme& p, const HolderModulus& hm);

/// Tail bound for sup_{t>0} |X(t)| / a(t) on the half-axis.
TailBound halfaxis_constants(const PartitionScheme& p, const HolderModulus& hm, double gamma,
                             double theta);

/// Tail bound for sup |X(t1,t2)| / a(t1) over the strip t1 - delta <= t2 <= t1.
TailBound strip_weighted_constants(const PartitionScheme& p, const HolderModulus& hm,
                                   double delta, double gamma, double eps, double theta);

enum class DominanceStatus {
  uninformative,  ///< bound >= 1
  dominated,      ///< Wilson upper limit <= bound
  unresolved,     ///< Wilson lower limit <= bound < Wilson upper limit
  violated,       ///< Wilson lower limit > bound
};

std::string to_string(DominanceStatus s);

struct DominancePoint {
  double u = 0.0;
  std::size_t exceedances = 0;
  double frequency = 0.0;
  double wilson_upper = 0.0;
  double wilson_lower = 0.0;
  double bound = 0.0;
  DominanceStatus status = DominanceStatus::uninformative;
};

struct DominanceReport {
  std::size_t samples = 0;
  double confidence = 0.99;
  std::vector<DominancePoint> points;

  std::size_t count(DominanceStatus s) const;
  bool any_violated() const { return count(DominanceStatus::violated) > 0; }
  nlohmann::json to_json() const;
};

/// Compares empirical exceedance frequencies P(stat > u) against a bound.
DominanceReport verify_dominance(const std::function<double(double)>& bound,
                                 std::span<const double> samples, std::span<const double> u_grid,
                                 double confidence = 0.99);

/// Uses tb.evaluate_best.
DominanceReport verify_dominance(const TailBound& tb, std::span<const double> samples,
                                 std::span<const double> u_grid, double confidence = 0.99);

}  // namespace mbm
