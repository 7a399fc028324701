#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mbm {

enum class HurstKind { constant, affine_clipped, sinusoidal, logistic, custom };

std::string_view to_string(HurstKind kind);
HurstKind hurst_kind_from_string(std::string_view name);

/// Functional Hurst parameter t -> H_t with certified range [h1, h2] and
/// Hölder data |H_t - H_s| <= D |t - s|^kappa.
///
/// Immutable; evaluation is pure and thread-safe.
class HurstFunction {
 public:
  using Evaluator = std::function<double(double)>;

  /// Hand-built function. Bounds are taken as given and are not checked
  /// here; run certify() to validate them.
  static HurstFunction custom(Evaluator eval, double h1, double h2,
                              double holder_D, double holder_kappa);

  double operator()(double t) const { return eval_(t); }

  HurstKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

  double h1() const { return h1_; }
  double h2() const { return h2_; }
  double holder_D() const { return D_; }
  double holder_kappa() const { return kappa_; }

  /// min(h1, kappa): path regularity exponent.
  double h3() const;
  /// max(h2, kappa).
  double h4() const;
  /// h4 - h3.
  double h5() const;

  /// True when the lower bound was widened to admit a constant function.
  bool widened() const { return widened_; }

 private:
  friend HurstFunction make_hurst(HurstKind, const std::vector<double>&);

  HurstFunction(HurstKind kind, std::vector<double> params, Evaluator eval,
                double h1, double h2, double D, double kappa, bool widened);

  HurstKind kind_;
  std::vector<double> params_;
  Evaluator eval_;
  double h1_;
  double h2_;
  double D_;
  double kappa_;
  bool widened_;
};

/// Amount by which h1 is lowered for a constant Hurst function.
inline constexpr double kConstantWidening = 1e-6;

/// Builds one of the shipped families.
///
///   constant       [H]                      H_t = H
///   affine-clipped [start, slope, lo, hi]   H_t = clamp(start + slope t, lo, hi)
///   sinusoidal     [base, amp, freq]        H_t = base + amp sin(freq t)
///   logistic       [lo, hi, rate, mid]      H_t = lo + (hi-lo) / (1 + exp(-rate (t-mid)))
///
/// h1/h2 are the analytic infimum/supremum over [0, inf) and (D, kappa) the
/// analytic Lipschitz data (kappa = 1). Families that degenerate to a
/// constant get h1 widened by kConstantWidening.
///
/// Throws DomainError when the range leaves (0,1) or parameters are not
/// finite.
HurstFunction make_hurst(HurstKind kind, const std::vector<double>& params);

/// Parses "sin:0.7,0.05,1", "const:0.7", "affine:...", "logistic:...".
HurstFunction parse_hurst(std::string_view spec);

nlohmann::json to_json(const HurstFunction& h);
HurstFunction hurst_from_json(const nlohmann::json& j);

struct CertifyReport {
  bool pass = true;
  bool range_ok = true;
  bool holder_ok = true;
  /// Point with the largest excursion outside [h1, h2] (if any).
  double worst_range_t = 0.0;
  double worst_range_excess = 0.0;
  /// Pair with the largest ratio |H_t - H_s| / (D |t-s|^kappa).
  double worst_s = 0.0;
  double worst_t = 0.0;
  double worst_ratio = 0.0;
};

/// Default certification density.
inline constexpr std::size_t kCertifyPointsPerUnit = 512;

/// Checks (H1) and (H2) on all pairs of a uniform grid over [0, horizon]
/// (Hölder pairs use s > 0).
CertifyReport certify(const HurstFunction& h, double horizon, std::size_t grid);

nlohmann::json to_json(const CertifyReport& r);

}  // namespace mbm
