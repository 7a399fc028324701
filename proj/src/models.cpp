#include "mbm/models.hpp"

#include <cmath>

#include "mbm/errors.hpp"
#include "mbm/fraccalc.hpp"
#include "mbm/stats.hpp"

namespace mbm {

OUModel::OUModel(double th, double x, HurstFunction h) : theta(th), x0(x), hurst(std::move(h)) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("OU drift must be >= 0");
  if (!std::isfinite(x0)) throw DomainError("initial value must be finite");
  if (!(hurst.h3() > 0.5)) throw DomainError("OU model needs h3 = min(h1, kappa) > 1/2");
}

nlohmann::json EstimatorResult::to_json() const {
  nlohmann::json j{{"estimate", estimate}, {"T", T}, {"diagnostics", diagnostics}};
  j["pivot_scale"] = pivot_scale ? nlohmann::json(*pivot_scale) : nlohmann::json();
  j["pivot"] = pivot ? nlohmann::json(*pivot) : nlohmann::json();
  if (ci)
    j["ci"] = {{"lo", ci->lo}, {"hi", ci->hi}, {"level", ci->level}};
  else
    j["ci"] = nullptr;
  return j;
}

SamplePath linear_from_noise(double theta, const SamplePath& noise) {
  std::vector<double> v(noise.values().begin(), noise.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += theta * noise.t(i);
  nlohmann::json meta = noise.meta();
  meta["model"] = {{"type", "linear"}, {"theta", theta}};
  return SamplePath(noise.dt(), std::move(v), noise.seed(), std::move(meta));
}

SamplePath simulate_linear(const LinearModel& m, double horizon, std::size_t n,
                           std::uint64_t seed) {
  return linear_from_noise(m.theta, simulate(kernel(m.hurst), horizon, n, 1, seed).front());
}

EstimatorResult estimate_linear(const SamplePath& x, const HurstFunction& h, double level,
                                std::optional<double> true_theta) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
  EstimatorResult r;
  r.T = x.horizon();
  r.estimate = x.back() / r.T;
  const double HT = h(r.T);
  const double scale = c_of_h(HT) / std::pow(r.T, 1.0 - HT);
  r.pivot_scale = scale;
  if (true_theta) r.pivot = (r.estimate - *true_theta) / scale;
  const double z = stats::normal_quantile(0.5 * (1.0 + level));
  r.ci = ConfidenceInterval{r.estimate - scale * z, r.estimate + scale * z, level};
  r.diagnostics = {{"X_T", x.back()}, {"H_T", HT}, {"z", z}};
  return r;
}

SamplePath ou_from_noise(double theta, double x0, const SamplePath& noise) {
  const std::size_t n = noise.n();
  const double dt = noise.dt();
  std::vector<double> v(n + 1);
  if (theta == 0.0) {
    for (std::size_t i = 0; i <= n; ++i) v[i] = x0 + noise[i];
  } else {
    double cum = 0.0;
    double prev = noise[0];
    v[0] = x0 + noise[0];
    for (std::size_t i = 1; i <= n; ++i) {
      const double t = noise.t(i);
      const double cur = std::exp(-theta * t) * noise[i];
      cum += 0.5 * dt * (prev + cur);
      prev = cur;
      const double g = std::exp(theta * t);
      v[i] = x0 * g + theta * g * cum + noise[i];
    }
  }
  nlohmann::json meta = noise.meta();
  meta["model"] = {{"type", "ou"}, {"theta", theta}, {"x0", x0}};
  return SamplePath(dt, std::move(v), noise.seed(), std::move(meta));
}

SamplePath simulate_ou(const OUModel& m, double horizon, std::size_t n, std::uint64_t seed) {
  return ou_from_noise(m.theta, m.x0, simulate(kernel(m.hurst), horizon, n, 1, seed).front());
}

std::string_view to_string(IntegrationMethod m) {
  return m == IntegrationMethod::fractional ? "fractional" : "riemann";
}

IntegrationMethod integration_method_from_string(std::string_view s) {
  if (s == "fractional") return IntegrationMethod::fractional;
  if (s == "riemann" || s == "rs") return IntegrationMethod::riemann;
  throw DomainError("unknown integration method '" + std::string(s) + "'");
}

double trapezoid_square(const SamplePath& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.n(); ++i) s += x[i] * x[i] + x[i + 1] * x[i + 1];
  return 0.5 * x.dt() * s;
}

EstimatorResult estimate_ou(const SamplePath& x, const HurstFunction& h, IntegrationMethod method,
                            double alpha) {
  const auto g = frac::GridFunction::from_path(x);
  double num = 0.0;
  nlohmann::json diag;
  if (method == IntegrationMethod::fractional) {
    if (alpha <= 0.0) alpha = frac::default_alpha(h.h3());
    const auto block = static_cast<std::size_t>(std::max(1.0, std::round(1.0 / x.dt())));
    num = frac::pathwise_integral_blocks(g, g, alpha, block);
    diag["alpha"] = alpha;
    diag["block_steps"] = block;
  } else {
    num = frac::rs_sum(g, g);
  }
  const double den = trapezoid_square(x);
  if (!(den >= 1e-12)) throw NumericalError("estimator denominator below 1e-12");
  const double chain = 0.5 * (x.back() * x.back() - x[0] * x[0]);
  EstimatorResult r;
  r.T = x.horizon();
  r.estimate = num / den;
  diag["method"] = std::string(to_string(method));
  diag["numerator"] = num;
  diag["denominator"] = den;
  diag["chain_rule_numerator"] = chain;
  diag["chain_rule_rel_diff"] = chain != 0.0 ? std::abs(num - chain) / std::abs(chain) : 0.0;
  r.diagnostics = std::move(diag);
  return r;
}

double sigma_T_squared(const HurstFunction& h, double T, std::size_t n) {
  if (!(T > 0.0)) throw DomainError("T must be positive");
  if (n < 1) throw DomainError("need n >= 1");
  const CovKernel k(h);
  const double dt = T / static_cast<double>(n);
  std::vector<double> w(n + 1, 1.0);
  w.front() = w.back() = 0.5;
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double s = dt * static_cast<double>(i);
    double row = w[i] * k(s, s);
    for (std::size_t j = 1; j < i; ++j) row += 2.0 * w[j] * k(s, dt * static_cast<double>(j));
    total += w[i] * row;
  }
  return total * dt * dt / (T * T);
}

}  // namespace mbm
