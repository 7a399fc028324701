#include "mbm/growth.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "mbm/errors.hpp"
#include "mbm/series.hpp"

namespace mbm {

namespace {
constexpr double kLn2 = 0.69314718055994530942;

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
}
}  // namespace

std::string_view to_string(GrowthKind k) {
  return k == GrowthKind::path ? "path" : "increment";
}

GrowthBound::GrowthBound(GrowthKind kind, double exponent, double p, double h2, double h3,
                         TailBound tail)
    : kind_(kind), exponent_(exponent), p_(p), h2_(h2), h3_(h3), tail_(std::move(tail)) {}

double GrowthBound::envelope(double t) const {
  return std::max(std::pow(t, h2_ + exponent_), 1.0);
}

double GrowthBound::lag_envelope(double r) const {
  if (!(r > 0.0)) throw DomainError("lag must be positive");
  return std::pow(r, h3_) * std::max(std::pow(std::abs(std::log(r)), p_), 1.0);
}

nlohmann::json GrowthBound::to_json() const {
  nlohmann::json j = tail_.to_json();
  j["growth_kind"] = std::string(to_string(kind_));
  j[kind_ == GrowthKind::path ? "delta" : "eps"] = exponent_;
  if (kind_ == GrowthKind::increment) j["p"] = p_;
  j["log_C1"] = log_C1();
  const double c1 = C1();
  j["C1"] = std::isfinite(c1) ? nlohmann::json(c1) : nlohmann::json();
  j["C2"] = C2();
  return j;
}

double path_gamma_limit(const HurstFunction& h, double delta) {
  return std::min(delta * h.h3() / h.h4(), 1.0);
}

double increment_gamma_limit(const HurstFunction& h, double eps) {
  if (h.h5() == 0.0) return 1.0;
  return std::min(eps * h.h3() / (2.0 * h.h5()), 1.0);
}

GrowthBound growth_bound_path(const HurstFunction& h, double delta, double theta, double gamma) {
  return growth_bound_path(IncrementBounds(h), delta, theta, gamma);
}

GrowthBound growth_bound_path(const IncrementBounds& ib, double delta, double theta,
                              double gamma) {
  const HurstFunction& h = ib.hurst();
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  check_theta(theta);
  const double limit = path_gamma_limit(h, delta);
  if (gamma <= 0.0) gamma = 0.5 * limit;
  const bool at_one = limit == 1.0 && gamma == 1.0;
  if (!(gamma < limit || at_one))
    throw DomainError("gamma must lie in (0, min(delta h3/h4, 1))");

  const double h2 = h.h2(), h3 = h.h3(), h4 = h.h4();
  const double K1 = ib.constants().K1, K3 = ib.constants().K3;
  const double A = K1 * std::exp(h2) * (1.0 + 1.0 / std::expm1(delta));

  const double lead = std::exp(h2 + gamma * h4 / h3);
  const double q = gamma / (2.0 * h3);
  const SeriesSum S = sum_series([&](std::size_t k) {
    if (k == 0) return lead * std::pow(2.0, q);
    const double kk = static_cast<double>(k);
    return lead * std::exp(kk * (gamma * h4 / h3 - delta)) * std::pow((kk + 1) * (kk + 1) + 1, q);
  });

  const double coef = std::pow(K1, 1.0 - gamma / h3) * std::pow(K3, gamma / h3) * S.value /
                      (gamma * A);
  auto log_pref = [=](double th) {
    return (2.0 / h3 - 1.0) * kLn2 +
           coef * std::pow(std::exp2(2.0 / h3 - 1.0) / std::pow(th, 1.0 / h3), gamma);
  };
  nlohmann::json params{{"delta", delta},   {"gamma", gamma},     {"K1", K1},
                        {"K3", K3},         {"series", S.value},  {"series_terms", S.terms},
                        {"h2", h2},         {"h3", h3},           {"h4", h4}};
  TailBound tb("growth_path", A, A, theta, log_pref, std::move(params));
  return GrowthBound(GrowthKind::path, delta, 0.0, h2, h3, std::move(tb));
}

double lag_series_B(double h3, double p) {
  if (!(p > 1.0)) throw DomainError("p must exceed 1");
  return std::exp(h3) * (1.0 + boost::math::zeta(p));
}

GrowthBound growth_bound_incr(const HurstFunction& h, double eps, double p, double theta,
                              double gamma, double strip_eps) {
  return growth_bound_incr(IncrementBounds(h), eps, p, theta, gamma, strip_eps);
}

GrowthBound growth_bound_incr(const IncrementBounds& ib, double eps, double p, double theta,
                              double gamma, double strip_eps) {
  const HurstFunction& h = ib.hurst();
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(p > 2.0)) throw DomainError("p must exceed 2");
  check_theta(theta);
  const double limit = increment_gamma_limit(h, eps);
  if (gamma <= 0.0) gamma = 0.5 * limit;
  const bool at_one = limit == 1.0 && gamma == 1.0;
  if (!(gamma < limit || at_one))
    throw DomainError("gamma must lie in (0, min(eps h3/(2 h5), 1))");

  const double h2 = h.h2(), h3 = h.h3(), h5 = h.h5();
  if (strip_eps <= 0.0) strip_eps = 0.5 * h3;
  if (!(strip_eps < h3)) throw DomainError("strip eps must lie in (0, h3)");
  const double K3 = ib.constants().K3;

  auto b = [](std::size_t l) { return l == 0 ? 0.0 : std::exp(static_cast<double>(l)); };
  auto a = [h2, eps](double t) { return std::max(std::pow(t, h2 + eps), 1.0); };
  PartitionScheme part = PartitionScheme::from_weight_function(b, a);
  HolderModulus hm;
  hm.beta = h3;
  hm.m = [=, &ib](std::size_t l) { return K3 * ib.z(b(l + 1)); };
  hm.c = [=, &ib](std::size_t l) {
    return 2.0 * K3 * std::pow(b(l + 1) - b(l), h5) * ib.z(b(l + 1));
  };
  const TailBound strip = strip_weighted_constants(part, hm, 1.0, gamma, strip_eps, theta);

  const double B = lag_series_B(h3, p);
  const double extra = boost::math::zeta(p - 1.0) / (1.0 + boost::math::zeta(p));
  const double A = strip.A();
  auto log_pref = [strip, extra](double th) { return extra + strip.log_prefactor_at(th); };
  nlohmann::json params = strip.params();
  params["eps"] = eps;
  params["p"] = p;
  params["strip_eps"] = strip_eps;
  params["B"] = B;
  params["K3"] = K3;
  params["lag_log_term"] = extra;
  TailBound tb("growth_increment", A, A * B, theta, log_pref, std::move(params));
  return GrowthBound(GrowthKind::increment, eps, p, h2, h3, std::move(tb));
}

double sup_statistic_path(const SamplePath& path, const std::function<double(double)>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i <= path.n(); ++i)
    best = std::max(best, std::abs(path[i]) / a(path.t(i)));
  return best;
}

double sup_statistic_increment(const SamplePath& path, const std::function<double(double)>& a,
                               const std::function<double(double)>& g) {
  const std::size_t n = path.n();
  const double dt = path.dt();
  const auto max_lag = static_cast<std::size_t>(std::floor(1.0 / dt + 1e-9));
  std::vector<double> glag(max_lag + 1, 0.0);
  for (std::size_t k = 1; k <= max_lag; ++k) glag[k] = g(dt * static_cast<double>(k));
  double best = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double ai = a(path.t(i));
    const std::size_t kmax = std::min(max_lag, i);
    for (std::size_t k = 1; k <= kmax; ++k)
      best = std::max(best, std::abs(path[i] - path[i - k]) / (ai * glag[k]));
  }
  return best;
}

double sup_statistic(const SamplePath& path, const GrowthBound& gb) {
  auto a = [&gb](double t) { return gb.envelope(t); };
  if (gb.kind() == GrowthKind::path) return sup_statistic_path(path, a);
  return sup_statistic_increment(path, a, [&gb](double r) { return gb.lag_envelope(r); });
}

}  // namespace mbm
