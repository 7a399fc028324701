#pragma once

#include <json.hpp>

#include "mbm/hurst.hpp"

namespace mbm {

/// Constants of the incremental-variance bounds for a Hurst range [h1, h2].
///
///   C1 = int_{|v|<1} 4 sin^2(v/2) |v|^{-2h2-1} dv + int_{|v|>1} 4 sin^2(v/2) |v|^{-2h1-1} dv
///   C2 = same with an extra log^2|v| weight
///   C3 = max(2 sup_{0<s<=1} s^{2h1} (C2 + C1 log^2 s), 2 (C2 + C1))
///   K1 = max_{[h1,h2]} C(H),  K2 = 2 max(C1, C3),  K3 = sqrt(K2 (1 + D^2))
struct VarianceConstants {
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;

  nlohmann::json to_json() const;
};

/// The two spectral integrals for exponents lo = h1 (outer region) and
/// hi = h2 (inner region). log_weight selects C2.
double spectral_constant(double lo, double hi, bool log_weight);

VarianceConstants variance_constants(const HurstFunction& h);

/// z(s) = s^{h2} sqrt(log^2 s + 1) for s >= 1, 1 below.
double z_envelope(double s, double h2);

enum class BlockForm {
  short_range,       ///< |t - s| <= 1: K3 |t-s|^{h3} z(b)
  long_range,        ///< K3 |t-s|^{h3} (b-a)^{h5} z(b)
  double_increment,  ///< 2 K3 max-displacement^{h3} (b-a)^{h5} z(b)
};

/// Evaluators for a fixed Hurst function; constants computed once.
class IncrementBounds {
 public:
  explicit IncrementBounds(HurstFunction h);

  const HurstFunction& hurst() const { return h_; }
  const VarianceConstants& constants() const { return c_; }
  double z(double s) const { return z_envelope(s, h_.h2()); }

  /// Bound on E (Y_t - Y_s)^2:  K2 |t-s|^{2 H_t} + K2 (H_t - H_s)^2 z(s)^2, t >= s >= 0.
  double incr_var(double s, double t) const;

  /// Bound on the standard deviation of an increment inside the block [a, b].
  /// For double_increment, s and t are the larger of the two displacements' endpoints
  /// (only |t - s| enters).
  double block(double a, double b, double s, double t, BlockForm form) const;

 private:
  HurstFunction h_;
  VarianceConstants c_;
};

/// One-shot helpers; each call recomputes the constants.
double incr_var_bound(const HurstFunction& h, double s, double t);
double incr_var_bound_block(const HurstFunction& h, double a, double b, double s, double t,
                            bool short_form);

}  // namespace mbm
