#include <doctest.h>

#include <cmath>
#include <vector>

#include "mbm/covariance.hpp"
#include "mbm/errors.hpp"
#include "mbm/fraccalc.hpp"
#include "mbm/simulate.hpp"

using namespace mbm;
using namespace mbm::frac;

namespace {

template <class F>
GridFunction sample(F f, double a, double b, std::size_t n) {
  std::vector<double> v(n + 1);
  const double dt = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(a + dt * static_cast<double>(i));
  return GridFunction(a, dt, std::move(v));
}

}  // namespace

TEST_CASE("order validation") {
  CHECK_THROWS_AS(FracOrder(0.0), DomainError);
  CHECK_THROWS_AS(FracOrder(1.0), DomainError);
  CHECK(default_alpha(0.8) == doctest::Approx(0.5));
  CHECK(default_alpha(0.6) == 0.5);
  CHECK(default_alpha(0.9) == 0.5);
  CHECK_THROWS_AS(default_alpha(0.52), DomainError);
}

TEST_CASE("integral of the identity") {
  auto f = sample([](double t) { return t; }, 0.0, 1.0, 10);
  auto I = rl_integral(f, FracOrder(0.3));
  CHECK(I[10] == doctest::Approx(0.857109621959462959).epsilon(1e-13));
  CHECK(I[0] == 0.0);
  for (std::size_t i = 1; i <= 10; ++i)
    CHECK(I[i] == doctest::Approx(std::pow(f.t(i), 1.3) / std::tgamma(2.3)).epsilon(1e-12));
}

TEST_CASE("closed forms on both sides") {
  const double al = 0.4, b = 2.0;
  auto sq = sample([](double t) { return t * t; }, 0.0, b, 2000);
  auto I = rl_integral(sq, FracOrder(al));
  for (std::size_t i = 200; i <= 2000; i += 300)
    CHECK(I[i] == doctest::Approx(2.0 * std::pow(sq.t(i), 2 + al) / std::tgamma(3 + al))
                      .epsilon(1e-5));

  auto lin = sample([b](double t) { return b - t; }, 0.0, b, 400);
  auto Ir = rl_integral(lin, FracOrder(al, Side::right));
  for (std::size_t i = 0; i < 400; i += 50)
    CHECK(Ir[i] == doctest::Approx(std::pow(b - lin.t(i), 1 + al) / std::tgamma(2 + al))
                       .epsilon(1e-12));

  auto id = sample([](double t) { return t; }, 0.0, b, 2000);
  auto D = rl_derivative(id, FracOrder(al), true);
  CHECK(D[0] == 0.0);
  for (std::size_t i = 200; i <= 2000; i += 300)
    CHECK(D[i] ==
          doctest::Approx(std::pow(id.t(i), 1 - al) / std::tgamma(2 - al)).epsilon(1e-3));

  // centered right derivative acts on lin(b) - lin = -(b - x)
  auto Dr = rl_derivative(lin, FracOrder(al, Side::right), true);
  CHECK(Dr[400] == 0.0);
  for (std::size_t i = 0; i < 360; i += 40)
    CHECK(-Dr[i] ==
          doctest::Approx(std::pow(b - lin.t(i), 1 - al) / std::tgamma(2 - al)).epsilon(1e-3));
}

TEST_CASE("derivative inverts the integral") {
  auto f = sample([](double t) { return std::sin(3 * t) * t; }, 0.0, 1.5, 3000);
  const FracOrder o(0.35);
  auto back = rl_derivative(rl_integral(f, o), o, false);
  for (std::size_t i = 300; i <= 3000; i += 300) CHECK(std::abs(back[i] - f[i]) < 5e-3);
}

TEST_CASE("pathwise integral of smooth functions") {
  auto y = sample([](double t) { return t * t; }, 0.0, 1.0, 2048);
  auto z = sample([](double t) { return std::cos(t); }, 0.0, 1.0, 2048);
  // int cos(t) 2t dt = 2 (cos 1 + sin 1 - 1)
  const double exact = 2.0 * (std::cos(1.0) + std::sin(1.0) - 1.0);
  CHECK(pathwise_integral(z, y, 0.5) == doctest::Approx(exact).epsilon(1e-5));
  CHECK(pathwise_integral(z, y, 0.3) == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("pathwise integral on mBm paths") {
  auto h = parse_hurst("sin:0.75,0.05,1");
  PathSimulator sim(kernel(h), 2.0, 1024);
  for (std::uint64_t i = 0; i < 3; ++i) {
    auto y = GridFunction::from_path(sim.path(21, i));
    const double yb = y[y.n()];

    auto one = sample([](double) { return 1.0; }, 0.0, 2.0, 1024);
    auto r1 = pathwise_integral_detail(one, y, 0.4);
    CHECK(r1.fractional_part == 0.0);
    CHECK(r1.value == doctest::Approx(yb));

    auto r = pathwise_integral_detail(y, y, default_alpha(h.h3()));
    CHECK(r.value == doctest::Approx(0.5 * yb * yb).epsilon(1e-3).scale(1.0));
    CHECK(std::abs(r.value) <= r.estimate * (1.0 + 1e-9));

    auto z1 = sample([](double t) { return std::exp(-t); }, 0.0, 2.0, 1024);
    std::vector<double> mix(y.n() + 1);
    for (std::size_t k = 0; k <= y.n(); ++k) mix[k] = 2.0 * y[k] - 3.0 * z1[k];
    GridFunction zmix(0.0, y.dt(), mix);
    const double lhs = pathwise_integral(zmix, y, 0.4);
    const double rhs = 2.0 * pathwise_integral(y, y, 0.4) - 3.0 * pathwise_integral(z1, y, 0.4);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("block sums match a single integral for smooth data") {
  auto y = sample([](double t) { return std::sin(t); }, 0.0, 3.0, 3000);
  auto z = sample([](double t) { return t; }, 0.0, 3.0, 3000);
  const double whole = pathwise_integral(z, y, 0.4);
  CHECK(pathwise_integral_blocks(z, y, 0.4, 1000) == doctest::Approx(whole).epsilon(1e-5));
  // int t cos t on [0,3] = 3 sin 3 + cos 3 - 1
  CHECK(whole == doctest::Approx(3 * std::sin(3.0) + std::cos(3.0) - 1).epsilon(1e-5));
}

TEST_CASE("Riemann-Stieltjes sums") {
  auto y = sample([](double t) { return t * t * t; }, 0.0, 1.0, 100);
  auto c = sample([](double) { return 2.5; }, 0.0, 1.0, 100);
  CHECK(rs_sum(c, y) == doctest::Approx(2.5));

  auto exact_err = [](std::size_t n) {
    auto yy = sample([](double t) { return std::sin(t); }, 0.0, 1.0, n);
    auto zz = sample([](double t) { return t; }, 0.0, 1.0, n);
    return std::abs(rs_sum(zz, yy) - (std::sin(1.0) + std::cos(1.0) - 1.0));
  };
  CHECK(exact_err(200) < exact_err(100));
  CHECK(exact_err(400) < exact_err(200));
  CHECK(exact_err(400) < 2e-3);

  auto other = sample([](double t) { return t; }, 0.0, 2.0, 100);
  CHECK_THROWS_AS(rs_sum(other, y), DomainError);
}

TEST_CASE("Hölder exponent estimate") {
  auto f = sample([](double t) { return std::sqrt(t); }, 0.0, 1.0, 4096);
  CHECK(holder_exponent_estimate(f) == doctest::Approx(0.5).epsilon(0.05));
  auto g = sample([](double t) { return 3 * t; }, 0.0, 1.0, 4096);
  CHECK(holder_exponent_estimate(g) == doctest::Approx(1.0).epsilon(0.02));
}
