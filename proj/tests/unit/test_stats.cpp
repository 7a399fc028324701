#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mbm/errors.hpp"
#include "mbm/series.hpp"
#include "mbm/stats.hpp"

using namespace mbm;

TEST_CASE("normal quantile") {
  CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959963984540054236).epsilon(1e-14));
  CHECK(stats::normal_cdf(stats::normal_quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("Kolmogorov tail") {
  CHECK(stats::kolmogorov_pvalue(1.0) == doctest::Approx(0.269999671677354521).epsilon(1e-12));
  CHECK(stats::kolmogorov_pvalue(0.5) == doctest::Approx(0.963945243664875094).epsilon(1e-12));
  CHECK(stats::kolmogorov_pvalue(1.5) == doctest::Approx(0.022217962616525129).epsilon(1e-12));
  CHECK(stats::kolmogorov_pvalue(0.0) == 1.0);
  CHECK(stats::kolmogorov_pvalue(10.0) == doctest::Approx(0.0));
}

TEST_CASE("KS test on normal draws") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd;
  std::vector<double> x(2000);
  for (double& v : x) v = nd(gen);
  CHECK(stats::ks_normal(x).p_value > 0.01);

  std::vector<double> c(200, 0.25);
  CHECK(stats::ks_normal(c).p_value < 1e-10);
  CHECK_THROWS_AS(stats::ks_normal(std::vector<double>(49, 0.0)), DomainError);
}

TEST_CASE("Wilson limits") {
  CHECK(stats::wilson_lower(0, 100) == 0.0);
  CHECK(stats::wilson_upper(0, 100) > 0.0);
  CHECK(stats::wilson_upper(100, 100) == 1.0);
  const double z = stats::normal_quantile(0.99);
  CHECK(stats::wilson_upper(0, 5000) == doctest::Approx(z * z / (5000 + z * z)).epsilon(1e-12));
  CHECK(stats::wilson_lower(50, 100) < 0.5);
  CHECK(stats::wilson_upper(50, 100) > 0.5);
}

TEST_CASE("series summation") {
  auto geo = sum_series([](std::size_t k) { return std::pow(0.5, static_cast<double>(k)); });
  CHECK(geo.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(geo.tail < kSeriesTailTolerance);
  auto zeta3 = sum_series([](std::size_t k) { return 1.0 / std::pow(k + 1.0, 3.0); }, 1e-7);
  CHECK(zeta3.value == doctest::Approx(1.2020569031595942).epsilon(1e-6));
  CHECK_THROWS_AS(sum_series([](std::size_t) { return 1.0; }, 1e-12, 1000), NumericalError);
  CHECK_THROWS_AS(sum_series([](std::size_t k) { return k == 3 ? -1.0 : 1.0; }), NumericalError);
}

TEST_CASE("quantiles") {
  std::vector<double> v{1, 2, 3, 4};
  CHECK(stats::sorted_quantile(v, 0.5) == 2.5);
  CHECK(stats::sorted_quantile(v, 0.0) == 1.0);
  CHECK(stats::sorted_quantile(v, 1.0) == 4.0);
  CHECK(stats::median({5, 1, 3}) == 3.0);
}
