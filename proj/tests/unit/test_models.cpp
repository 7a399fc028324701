#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mbm/errors.hpp"
#include "mbm/models.hpp"

using namespace mbm;

namespace {

SamplePath scaled(const SamplePath& p, double c) {
  std::vector<double> v(p.values().begin(), p.values().end());
  for (auto& x : v) x *= c;
  return SamplePath(p.dt(), std::move(v));
}

}  // namespace

TEST_CASE("linear estimator") {
  auto h = parse_hurst("sin:0.7,0.05,1");
  PathSimulator sim(kernel(h), 8.0, 256);
  auto noise = sim.path(3, 0);
  for (double theta : {-1.0, 0.0, 2.5}) {
    auto x = linear_from_noise(theta, noise);
    auto r = estimate_linear(x, h, 0.95, theta);
    CHECK(r.estimate == doctest::Approx(theta + noise.back() / 8.0).epsilon(1e-13));
    REQUIRE(r.pivot_scale);
    CHECK(*r.pivot_scale ==
          doctest::Approx(c_of_h(h(8.0)) / std::pow(8.0, 1.0 - h(8.0))).epsilon(1e-13));
    REQUIRE(r.pivot);
    CHECK(*r.pivot == doctest::Approx(noise.back() / 8.0 / *r.pivot_scale).epsilon(1e-10));
    REQUIRE(r.ci);
    CHECK(r.ci->hi - r.estimate == doctest::Approx(1.959963984540054 * *r.pivot_scale));
  }
  // shifting the drift shifts the estimate
  auto a = estimate_linear(linear_from_noise(1.0, noise), h);
  auto b = estimate_linear(linear_from_noise(1.75, noise), h);
  CHECK(b.estimate - a.estimate == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("wide intervals cover") {
  auto h = parse_hurst("const:0.7");
  PathSimulator sim(kernel(h), 4.0, 128);
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto r = estimate_linear(linear_from_noise(0.3, sim.path(9, i)), h, 1.0 - 1e-9, 0.3);
    CHECK(r.ci->contains(0.3));
  }
}

TEST_CASE("OU path construction") {
  auto h = parse_hurst("sin:0.75,0.05,1");
  PathSimulator sim(kernel(h), 5.0, 1000);
  auto noise = sim.path(4, 0);

  auto flat = ou_from_noise(0.0, 1.5, noise);
  for (std::size_t i = 0; i <= noise.n(); i += 37)
    CHECK(flat[i] == doctest::Approx(1.5 + noise[i]).epsilon(1e-14));

  const double theta = 0.5;
  auto x = ou_from_noise(theta, 1.0, noise);
  CHECK(x[0] == 1.0);
  double integral = 0.0, worst = 0.0;
  for (std::size_t i = 1; i <= x.n(); ++i) {
    integral += 0.5 * x.dt() * (x[i - 1] + x[i]);
    worst = std::max(worst, std::abs(x[i] - 1.0 - theta * integral - noise[i]) /
                                (1.0 + std::abs(x[i])));
  }
  CHECK(worst < 1e-4);

  CHECK_THROWS_AS(OUModel(-0.1, 1.0, h), DomainError);
  CHECK_THROWS_AS(OUModel(0.5, 1.0, parse_hurst("const:0.4")), DomainError);
}

TEST_CASE("OU estimator on a noiseless path") {
  auto h = parse_hurst("const:0.75");
  SamplePath zero(0.005, std::vector<double>(1001, 0.0));
  auto x = ou_from_noise(1.0, 1.0, zero);
  for (auto m : {IntegrationMethod::fractional, IntegrationMethod::riemann}) {
    auto r = estimate_ou(x, h, m);
    CHECK(r.estimate == doctest::Approx(1.0).epsilon(5e-3));
  }
}

TEST_CASE("OU estimator is scale invariant") {
  auto h = parse_hurst("sin:0.75,0.05,1");
  auto x = simulate_ou(OUModel(0.5, 1.0, h), 5.0, 1024, 2);
  auto r1 = estimate_ou(x, h);
  auto r2 = estimate_ou(scaled(x, 3.0), h);
  CHECK(r2.estimate == doctest::Approx(r1.estimate).epsilon(1e-10));
  CHECK(r1.diagnostics.contains("chain_rule_rel_diff"));
  CHECK(r1.diagnostics["chain_rule_rel_diff"].get<double>() < 1e-3);
  auto rr = estimate_ou(x, h, IntegrationMethod::riemann);
  CHECK(std::isfinite(rr.estimate));
  CHECK(integration_method_from_string(to_string(IntegrationMethod::riemann)) ==
        IntegrationMethod::riemann);
  CHECK_THROWS_AS(estimate_ou(SamplePath(0.1, std::vector<double>(11, 0.0)), h), NumericalError);
}

TEST_CASE("averaged variance at H = 1/2") {
  auto h = parse_hurst("const:0.5");
  for (double T : {1.0, 4.0})
    CHECK(sigma_T_squared(h, T, 2048) ==
          doctest::Approx(2.0 * std::numbers::pi * T / 3.0).epsilon(1e-3));
  CHECK(trapezoid_square(SamplePath(0.5, {1.0, 1.0, 1.0})) == doctest::Approx(1.0));
}
