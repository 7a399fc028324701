#include "mbm/gauss_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mbm/errors.hpp"
#include "mbm/stats.hpp"

namespace mbm {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void check_modulus(const HolderModulus& hm, std::size_t terms) {
  require(hm.beta > 0.0 && hm.beta <= 1.0, "beta must lie in (0,1]");
  for (std::size_t k = 0; k < terms; ++k) {
    const double c = hm.c(k), m = hm.m(k);
    require(std::isfinite(c) && c > 0.0, "Hölder constants c_k must be positive and finite");
    require(std::isfinite(m) && m > 0.0, "standard deviation bounds m_k must be positive and finite");
  }
}

}  // namespace

PartitionScheme PartitionScheme::from_weight_function(std::function<double(std::size_t)> b,
                                                      std::function<double(double)> a) {
  PartitionScheme p;
  p.weight = [b, a](std::size_t k) { return a(b(k)); };
  p.breakpoint = std::move(b);
  return p;
}

void PartitionScheme::validate(std::size_t terms, bool unit_spacing) const {
  require(static_cast<bool>(breakpoint) && static_cast<bool>(weight), "partition is incomplete");
  require(breakpoint(0) == 0.0, "partition must start at b_0 = 0");
  for (std::size_t k = 0; k < terms; ++k) {
    const double gap = spacing(k);
    require(gap > 0.0, "breakpoints must be strictly increasing");
    if (unit_spacing) require(gap >= 1.0, "breakpoint spacing must be at least 1");
    require(weight(k) > 0.0, "weights a_k must be positive");
    require(weight(k + 1) > weight(k), "weights a_k must be increasing");
  }
}

TailBound::TailBound(std::string kind, double A, double scale, double theta,
                     LogPrefactor log_prefactor, nlohmann::json params)
    : kind_(std::move(kind)),
      A_(A),
      scale_(scale),
      theta_(theta),
      log_prefactor_fn_(std::move(log_prefactor)),
      log_prefactor_(log_prefactor_fn_(theta)),
      params_(std::move(params)) {
  require(scale_ > 0.0 && std::isfinite(scale_), "tail bound scale must be positive");
  require(theta_ > 0.0 && theta_ < 1.0, "theta must lie in (0,1)");
}

double TailBound::prefactor() const { return std::exp(log_prefactor_); }

double TailBound::rate() const {
  return (1.0 - theta_) * (1.0 - theta_) / (2.0 * scale_ * scale_);
}

double TailBound::log_value(double theta, double u) const {
  const double r = (1.0 - theta) * u / scale_;
  return log_prefactor_fn_(theta) - 0.5 * r * r;
}

double TailBound::evaluate(double u) const { return std::exp(log_value(theta_, u)); }

double TailBound::evaluate_optimized(double u) const {
  if (!(u > scale_)) return std::numeric_limits<double>::infinity();
  const double q = scale_ / u;
  const double theta = 1.0 - std::sqrt(1.0 - q * q);
  if (!(theta > 0.0)) return evaluate(u);
  return std::exp(log_value(theta, u));
}

double TailBound::best_theta(double u) const {
  constexpr double lo = 0.01, hi = 0.99, tol = 1e-4;
  constexpr int kScan = 98;
  // Coarse scan brackets the global minimum; strict '<' keeps the smaller theta on ties.
  int best = 0;
  double best_val = log_value(lo, u);
  for (int i = 1; i <= kScan; ++i) {
    const double th = lo + (hi - lo) * i / kScan;
    const double v = log_value(th, u);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kScan;
  double b = lo + (hi - lo) * std::min(best + 1, kScan) / kScan;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = log_value(x1, u), f2 = log_value(x2, u);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = log_value(x1, u);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = log_value(x2, u);
    }
  }
  const double refined = f1 <= f2 ? x1 : x2;
  const double scanned = lo + (hi - lo) * best / kScan;
  return log_value(refined, u) < best_val ? refined : scanned;
}

double TailBound::evaluate_best(double u) const {
  double v = std::min(log_value(theta_, u), log_value(best_theta(u), u));
  const double opt = evaluate_optimized(u);
  return std::min(std::exp(v), opt);
}

nlohmann::json TailBound::to_json() const {
  const double pf = prefactor();
  return nlohmann::json{{"kind", kind_},
                        {"A", A_},
                        {"scale", scale_},
                        {"theta", theta_},
                        {"prefactor", std::isfinite(pf) ? nlohmann::json(pf) : nlohmann::json()},
                        {"log_prefactor", log_prefactor_},
                        {"rate", rate()},
                        {"validity", validity()},
                        {"params", params_}};
}

double interval_mgf_bound(double m, double c, double beta, double length, double theta,
                          double lambda) {
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0,1]");
  require(m > 0.0 && c > 0.0 && length > 0.0 && lambda > 0.0,
          "m, c, length and lambda must be positive");
  const double k = std::exp2(2.0 / beta - 1.0);
  const double gauss = std::exp(lambda * lambda * m * m / (2.0 * (1.0 - theta) * (1.0 - theta)));
  const double cover = k * length * std::pow(c, 1.0 / beta) / std::pow(theta * m, 1.0 / beta);
  return k * gauss * (cover + 1.0);
}

double strip_mgf_bound(double a, double b, double delta, double m, double c, double beta,
                       double eps, double theta, double lambda) {
  require(a >= 0.0 && a < b, "strip needs 0 <= a < b");
  require(delta > 0.0, "strip width must be positive");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0,1]");
  require(eps > 0.0 && eps < beta, "eps must lie in (0,beta)");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  require(m > 0.0 && c > 0.0 && lambda > 0.0, "m, c and lambda must be positive");
  const double d = std::max(2.0 / (b - a), 4.0 / delta);
  const double gauss = std::exp(lambda * lambda * m * m / (2.0 * (1.0 - theta) * (1.0 - theta)));
  const double cover = std::pow(c, 2.0 / beta) /
                       (std::pow(1.0 - eps / beta, 2.0 / eps) * std::pow(theta * m, 2.0 / beta));
  return std::exp2(2.0 / eps - 2.0) * (b - a) * delta * gauss * (cover + d * d);
}

SeriesSum weighted_series_A(const PartitionScheme& p, const HolderModulus& hm) {
  return sum_series([&](std::size_t k) { return hm.m(k) / p.weight(k); });
}

TailBound halfaxis_constants(const PartitionScheme& p, const HolderModulus& hm, double gamma,
                             double theta) {
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0,1]");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  p.validate(64, false);
  check_modulus(hm, 64);

  const double beta = hm.beta;
  const SeriesSum A = weighted_series_A(p, hm);
  const SeriesSum S = sum_series([&](std::size_t k) {
    return std::pow(hm.m(k), 1.0 - gamma / beta) * std::pow(p.spacing(k), gamma) *
           std::pow(hm.c(k), gamma / beta) / p.weight(k);
  });

  const double lead = (2.0 / beta - 1.0) * kLn2;
  const double coef = S.value / (gamma * A.value);
  auto log_pref = [=](double th) {
    return lead + coef * std::pow(std::exp2(2.0 / beta - 1.0) / std::pow(th, 1.0 / beta), gamma);
  };
  nlohmann::json params{{"beta", beta},
                        {"gamma", gamma},
                        {"series_A", A.value},
                        {"series_holder", S.value},
                        {"terms_A", A.terms},
                        {"terms_holder", S.terms}};
  return TailBound("halfaxis", A.value, A.value, theta, log_pref, std::move(params));
}

TailBound strip_weighted_constants(const PartitionScheme& p, const HolderModulus& hm,
                                   double delta, double gamma, double eps, double theta) {
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0,1]");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  require(eps > 0.0 && eps < hm.beta, "eps must lie in (0,beta)");
  require(delta > 0.0, "strip width must be positive");
  p.validate(64, true);
  check_modulus(hm, 64);
  double min_gap = HUGE_VAL;
  for (std::size_t k = 0; k < 64; ++k) min_gap = std::min(min_gap, p.spacing(k));
  require(delta <= 2.0 * min_gap, "strip width exceeds twice the smallest block length");

  const double beta = hm.beta;
  const SeriesSum A = weighted_series_A(p, hm);
  const SeriesSum L = sum_series(
      [&](std::size_t k) { return hm.m(k) * std::log(p.spacing(k)) / p.weight(k); });
  const SeriesSum S = sum_series([&](std::size_t k) {
    return std::pow(hm.c(k), 2.0 * gamma / beta) * std::pow(hm.m(k), 1.0 - 2.0 * gamma / beta) /
           p.weight(k);
  });

  const double lead = (2.0 / eps + 2.0) * kLn2 - std::log(delta) + L.value / A.value;
  const double coef = std::pow(delta, 2.0 * gamma) * S.value /
                      (gamma * A.value * std::pow(1.0 - eps / beta, 2.0 * gamma / eps) *
                       std::pow(4.0, 2.0 * gamma));
  auto log_pref = [=](double th) { return lead + coef / std::pow(th, 2.0 * gamma / beta); };
  nlohmann::json params{{"beta", beta},       {"gamma", gamma},       {"eps", eps},
                        {"delta", delta},     {"series_A", A.value},  {"series_log", L.value},
                        {"series_holder", S.value}};
  return TailBound("strip", A.value, A.value, theta, log_pref, std::move(params));
}

std::string to_string(DominanceStatus s) {
  switch (s) {
    case DominanceStatus::uninformative: return "uninformative";
    case DominanceStatus::dominated: return "dominated";
    case DominanceStatus::unresolved: return "unresolved";
    case DominanceStatus::violated: return "violated";
  }
  return "unknown";
}

std::size_t DominanceReport::count(DominanceStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [s](const auto& p) { return p.status == s; }));
}

nlohmann::json DominanceReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"u", p.u},
                   {"exceedances", p.exceedances},
                   {"frequency", p.frequency},
                   {"wilson_upper", p.wilson_upper},
                   {"wilson_lower", p.wilson_lower},
                   {"bound", p.bound},
                   {"status", to_string(p.status)}});
  }
  return nlohmann::json{{"samples", samples},
                        {"confidence", confidence},
                        {"uninformative", count(DominanceStatus::uninformative)},
                        {"dominated", count(DominanceStatus::dominated)},
                        {"unresolved", count(DominanceStatus::unresolved)},
                        {"violated", count(DominanceStatus::violated)},
                        {"points", std::move(pts)}};
}

DominanceReport verify_dominance(const std::function<double(double)>& bound,
                                 std::span<const double> samples, std::span<const double> u_grid,
                                 double confidence) {
  if (samples.empty()) throw DomainError("verify_dominance needs samples");
  DominanceReport rep;
  rep.samples = samples.size();
  rep.confidence = confidence;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  for (double u : u_grid) {
    DominancePoint pt;
    pt.u = u;
    pt.exceedances = static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), u));
    pt.frequency = static_cast<double>(pt.exceedances) / static_cast<double>(sorted.size());
    pt.wilson_upper = stats::wilson_upper(pt.exceedances, sorted.size(), confidence);
    pt.wilson_lower = stats::wilson_lower(pt.exceedances, sorted.size(), confidence);
    pt.bound = bound(u);
    if (pt.bound >= 1.0)
      pt.status = DominanceStatus::uninformative;
    else if (pt.wilson_upper <= pt.bound)
      pt.status = DominanceStatus::dominated;
    else if (pt.wilson_lower > pt.bound)
      pt.status = DominanceStatus::violated;
    else
      pt.status = DominanceStatus::unresolved;
    rep.points.push_back(pt);
  }
  return rep;
}

DominanceReport verify_dominance(const TailBound& tb, std::span<const double> samples,
                                 std::span<const double> u_grid, double confidence) {
  return verify_dominance([&tb](double u) { return tb.evaluate_best(u); }, samples, u_grid,
                          confidence);
}

}  // namespace mbm
