#include "mbm/variance_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "mbm/covariance.hpp"
#include "mbm/errors.hpp"

namespace mbm {

namespace {

constexpr double kSeriesCut = 1e-4;
constexpr int kTailPeriods = 4000;

// int_0^eps v^r dv and int_0^eps v^r log^2 v dv, r > -1.
double power_moment(double r, double eps, bool log_weight) {
  const double p = r + 1.0;
  const double base = std::pow(eps, p);
  if (!log_weight) return base / p;
  const double L = std::log(eps);
  return base * (L * L / p - 2.0 * L / (p * p) + 2.0 / (p * p * p));
}

// int_0^1 4 sin^2(v/2) v^{-q} w(v) dv with q = 2 hi + 1.
double inner_part(double hi, bool log_weight) {
  const double q = 2.0 * hi + 1.0;
  // 4 sin^2(v/2) = v^2 - v^4/12 + O(v^6)
  double near = power_moment(2.0 - q, kSeriesCut, log_weight) -
                power_moment(4.0 - q, kSeriesCut, log_weight) / 12.0;
  auto f = [&](double v) {
    const double s = std::sin(0.5 * v);
    const double w = log_weight ? std::log(v) * std::log(v) : 1.0;
    return 4.0 * s * s * std::pow(v, -q) * w;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return near + ts.integrate(f, kSeriesCut, 1.0, 1e-14);
}

// int_1^inf 4 sin^2(v/2) v^{-s} w(v) dv with s = 2 lo + 1, written as
// 2 int v^{-s} w - 2 int cos(v) v^{-s} w.
double outer_part(double lo, bool log_weight) {
  const double s = 2.0 * lo + 1.0;
  const double sm1 = s - 1.0;
  const double smooth = log_weight ? 4.0 / (sm1 * sm1 * sm1) : 2.0 / sm1;

  auto f = [&](double v) {
    const double w = log_weight ? std::log(v) * std::log(v) : 1.0;
    return std::pow(v, -s) * w;
  };
  auto fprime = [&](double v) {
    const double L = std::log(v);
    if (!log_weight) return -s * std::pow(v, -s - 1.0);
    return std::pow(v, -s - 1.0) * (2.0 * L - s * L * L);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto g = [&](double v) { return std::cos(v) * f(v); };
  double osc = GK::integrate(g, 1.0, 2.0 * std::numbers::pi, 8, 1e-15);
  for (int k = 1; k < kTailPeriods; ++k) {
    const double a = 2.0 * std::numbers::pi * k;
    osc += GK::integrate(g, a, a + 2.0 * std::numbers::pi, 5, 1e-15);
  }
  // int_V^inf cos(v) f(v) dv ~ -sin(V) f(V) - cos(V) f'(V) with V a multiple of 2 pi
  const double V = 2.0 * std::numbers::pi * kTailPeriods;
  osc += -fprime(V);
  return smooth - 2.0 * osc;
}

}  // namespace

double spectral_constant(double lo, double hi, bool log_weight) {
  if (!(lo > 0.0 && lo <= hi && hi < 1.0)) throw DomainError("need 0 < lo <= hi < 1");
  return 2.0 * (inner_part(hi, log_weight) + outer_part(lo, log_weight));
}

double z_envelope(double s, double h2) {
  if (s < 1.0) return 1.0;
  const double L = std::log(s);
  return std::pow(s, h2) * std::sqrt(L * L + 1.0);
}

VarianceConstants variance_constants(const HurstFunction& h) {
  VarianceConstants c;
  const double h1 = h.h1(), h2 = h.h2();
  c.C1 = spectral_constant(h1, h2, false);
  c.C2 = spectral_constant(h1, h2, true);

  // sup over x = -log s >= 0 of e^{-2 h1 x} (C2 + C1 x^2)
  auto f = [&](double x) { return std::exp(-2.0 * h1 * x) * (c.C2 + c.C1 * x * x); };
  double sup = f(0.0);
  const double disc = c.C1 * c.C1 - 4.0 * h1 * h1 * c.C1 * c.C2;
  if (disc >= 0.0) {
    for (double sign : {-1.0, 1.0}) {
      const double x = (c.C1 + sign * std::sqrt(disc)) / (2.0 * h1 * c.C1);
      if (x > 0.0) sup = std::max(sup, f(x));
    }
  }
  c.C3 = std::max(2.0 * sup, 2.0 * (c.C2 + c.C1));

  auto neg_c = [](double H) { return -c_of_h(H); };
  double k1 = std::max(c_of_h(h1), c_of_h(h2));
  if (h2 > h1) {
    const auto r = boost::math::tools::brent_find_minima(neg_c, h1, h2, 40);
    k1 = std::max(k1, -r.second);
  }
  c.K1 = k1;
  c.K2 = 2.0 * std::max(c.C1, c.C3);
  const double D = h.holder_D();
  c.K3 = std::sqrt(c.K2 * (1.0 + D * D));
  return c;
}

nlohmann::json VarianceConstants::to_json() const {
  return {{"C1", C1}, {"C2", C2}, {"C3", C3}, {"K1", K1}, {"K2", K2}, {"K3", K3}};
}

IncrementBounds::IncrementBounds(HurstFunction h) : h_(std::move(h)), c_(variance_constants(h_)) {}

double IncrementBounds::incr_var(double s, double t) const {
  if (s < 0.0 || t < s) throw DomainError("incr_var needs t >= s >= 0");
  if (t == s) return 0.0;
  const double ht = h_(t), hs = s > 0.0 ? h_(s) : h_(0.0);
  const double zs = z(s);
  return c_.K2 * std::pow(t - s, 2.0 * ht) + c_.K2 * (ht - hs) * (ht - hs) * zs * zs;
}

double IncrementBounds::block(double a, double b, double s, double t, BlockForm form) const {
  if (!(b - a >= 1.0) || a < 0.0) throw DomainError("block needs 0 <= a and b - a >= 1");
  if (s < a || s > b || t < a || t > b) throw DomainError("block points must lie in [a, b]");
  const double gap = std::abs(t - s);
  const double base = c_.K3 * std::pow(gap, h_.h3()) * z(b);
  switch (form) {
    case BlockForm::short_range:
      if (gap > 1.0) throw DomainError("short-range form needs |t - s| <= 1");
      return base;
    case BlockForm::long_range:
      return base * std::pow(b - a, h_.h5());
    case BlockForm::double_increment:
      return 2.0 * base * std::pow(b - a, h_.h5());
  }
  return base;
}

double incr_var_bound(const HurstFunction& h, double s, double t) {
  return IncrementBounds(h).incr_var(s, t);
}

double incr_var_bound_block(const HurstFunction& h, double a, double b, double s, double t,
                            bool short_form) {
  return IncrementBounds(h).block(a, b, s, t,
                                  short_form ? BlockForm::short_range : BlockForm::long_range);
}

}  // namespace mbm
