#pragma once

#include <functional>
#include <string_view>

#include <json.hpp>

#include "mbm/gauss_bounds.hpp"
#include "mbm/hurst.hpp"
#include "mbm/sample_path.hpp"
#include "mbm/variance_bounds.hpp"

namespace mbm {

enum class GrowthKind { path, increment };

std::string_view to_string(GrowthKind k);

/// P(xi > u) <= C1 exp(-C2 u^2) for the growth variable of mBm paths
/// (|Y(t)| <= (t^{h2+delta} v 1) xi) or increments
/// (|Y(t1)-Y(t2)| <= (t1^{h2+eps} v 1) (t1-t2)^{h3} (|log(t1-t2)|^p v 1) eta).
class GrowthBound {
 public:
  GrowthBound(GrowthKind kind, double exponent, double p, double h2, double h3, TailBound tail);

  GrowthKind kind() const { return kind_; }
  /// delta (path) or eps (increment).
  double exponent() const { return exponent_; }
  /// Log exponent p (increment kind only; 0 for paths).
  double p() const { return p_; }

  double log_C1() const { return tail_.log_prefactor(); }
  double C1() const { return tail_.prefactor(); }
  double C2() const { return tail_.rate(); }
  double theta() const { return tail_.theta(); }
  const TailBound& tail() const { return tail_; }

  /// a(t) = t^{h2 + exponent} v 1.
  double envelope(double t) const;
  /// g(r) = r^{h3} (|log r|^p v 1), r in (0, 1].
  double lag_envelope(double r) const;

  double evaluate(double u) const { return tail_.evaluate(u); }
  double evaluate_best(double u) const { return tail_.evaluate_best(u); }

  nlohmann::json to_json() const;

 private:
  GrowthKind kind_;
  double exponent_;
  double p_;
  double h2_;
  double h3_;
  TailBound tail_;
};

/// Upper end of the admissible gamma interval (0, min(delta h3 / h4, 1)).
double path_gamma_limit(const HurstFunction& h, double delta);
/// Upper end of (0, min(eps h3 / (2 h5), 1)); 1 when h5 = 0.
double increment_gamma_limit(const HurstFunction& h, double eps);

/// Power-growth bound with b_k = e^k, a(t) = t^{h2+delta} v 1.
/// gamma <= 0 selects half the admissible limit.
GrowthBound growth_bound_path(const HurstFunction& h, double delta, double theta = 0.5,
                              double gamma = 0.0);
GrowthBound growth_bound_path(const IncrementBounds& ib, double delta, double theta = 0.5,
                              double gamma = 0.0);

/// Increment growth bound with b_l = e^l, a(t) = t^{h2+eps} v 1, d_k = e^{-k},
/// g(t) = t^{h3} (|log t|^p v 1). strip_eps in (0, h3) is the exponent of the
/// strip covering bound (<= 0 selects h3/2); gamma <= 0 selects half the limit.
GrowthBound growth_bound_incr(const HurstFunction& h, double eps, double p, double theta = 0.5,
                              double gamma = 0.0, double strip_eps = 0.0);
GrowthBound growth_bound_incr(const IncrementBounds& ib, double eps, double p,
                              double theta = 0.5, double gamma = 0.0, double strip_eps = 0.0);

/// B = e^{h3} (1 + zeta(p)).
double lag_series_B(double h3, double p);

/// max_i |Y(t_i)| / a(t_i).
double sup_statistic_path(const SamplePath& path, const std::function<double(double)>& a);

/// max |Y(t_i) - Y(t_j)| / (a(t_i) g(t_i - t_j)) over grid pairs 0 < t_i - t_j <= 1.
double sup_statistic_increment(const SamplePath& path, const std::function<double(double)>& a,
                               const std::function<double(double)>& g);

/// Dispatches on the bound's kind, using its envelopes.
double sup_statistic(const SamplePath& path, const GrowthBound& gb);

}  // namespace mbm
