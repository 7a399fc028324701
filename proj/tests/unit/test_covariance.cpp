#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include <Eigen/Cholesky>

#include "mbm/covariance.hpp"
#include "mbm/errors.hpp"
#include "mbm/sample_path.hpp"
#include "mbm/simulate.hpp"

using namespace mbm;

TEST_CASE("normalizing constant values") {
  CHECK(c_of_h(0.6) == doctest::Approx(2.44869613909592956878).epsilon(1e-14));
  CHECK(c_of_h(0.8) == doctest::Approx(2.73444751209373632423).epsilon(1e-14));
  CHECK(c_of_h(0.5) * c_of_h(0.5) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("kernel reduces to scaled Brownian covariance at H = 1/2") {
  auto k = kernel(make_hurst(HurstKind::constant, {0.5}));
  for (double s : {0.1, 0.5, 1.0, 3.0})
    for (double u : {0.2, 1.0, 2.5})
      CHECK(k(s, u) == doctest::Approx(2.0 * std::numbers::pi * std::min(s, u)).epsilon(1e-13));
}

TEST_CASE("kernel diagonal and symmetry") {
  auto h = make_hurst(HurstKind::sinusoidal, {0.7, 0.05, 1.0});
  auto k = kernel(h);
  CHECK(k(2.0, 2.0) == doctest::Approx(18.6437824419141526459).epsilon(1e-13));
  for (double t : {0.3, 1.0, 4.0, 9.5}) {
    const double c = c_of_h(h(t));
    CHECK(k.variance(t) == doctest::Approx(c * c * std::pow(t, 2 * h(t))).epsilon(1e-13));
  }
  CHECK(k(0.0, 1.3) == 0.0);
  CHECK(k(1.3, 0.0) == 0.0);
  for (double s : {0.2, 1.7, 3.1})
    for (double u : {0.4, 2.2, 5.0}) CHECK(k(s, u) == k(u, s));
  CHECK(k.increment_variance(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gram matrix is positive definite") {
  for (auto spec : {"sin:0.7,0.05,1", "const:0.3", "logistic:0.55,0.85,2,5"}) {
    auto k = kernel(parse_hurst(spec));
    std::vector<double> ts;
    for (int i = 1; i <= 60; ++i) ts.push_back(0.1 * i);
    Eigen::MatrixXd G = k.gram(ts);
    CHECK((G - G.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    CHECK(es.eigenvalues().minCoeff() > -1e-10 * es.eigenvalues().maxCoeff());
  }
}

TEST_CASE("simulation is deterministic and index addressable") {
  PathSimulator sim(kernel(parse_hurst("sin:0.7,0.05,1")), 2.0, 64);
  auto a = sim.path(7, 3);
  auto b = sim.path(7, 3);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK(a[0] == 0.0);
  CHECK(a.n() == 64);
  CHECK(a.horizon() == doctest::Approx(2.0));
  auto c = sim.path(8, 3);
  CHECK(c[10] != a[10]);

  auto batch = sim.paths(7, 5, 0, 2);
  auto tail = sim.paths(7, 2, 3, 1);
  REQUIRE(batch.size() == 5);
  CHECK(std::equal(batch[3].values().begin(), batch[3].values().end(), tail[0].values().begin()));
  CHECK(std::equal(batch[4].values().begin(), batch[4].values().end(), tail[1].values().begin()));
}

TEST_CASE("simulated variance at H = 1/2") {
  auto paths = simulate(kernel(make_hurst(HurstKind::constant, {0.5})), 1.0, 16, 4000, 11);
  double ss = 0.0;
  for (const auto& p : paths) ss += p.back() * p.back();
  // sampling sd of the estimate is about 2 pi sqrt(2 / 4000) = 0.14
  CHECK(std::abs(ss / 4000.0 - 2.0 * std::numbers::pi) < 0.7);
}

TEST_CASE("sample path file round trips") {
  PathSimulator sim(kernel(parse_hurst("sin:0.7,0.05,1")), 3.0, 100);
  auto p = sim.path(5, 0);
  auto dir = std::filesystem::temp_directory_path() / "mbm_unit_io";
  std::filesystem::create_directories(dir);

  p.write_csv(dir / "p.csv");
  auto q = SamplePath::read_csv(dir / "p.csv");
  CHECK(q.dt() == p.dt());
  REQUIRE(q.n() == p.n());
  CHECK(std::equal(p.values().begin(), p.values().end(), q.values().begin()));

  p.write_binary(dir / "p.bin");
  auto r = SamplePath::read_binary(dir / "p.bin");
  CHECK(r.dt() == p.dt());
  CHECK(r.seed() == p.seed());
  CHECK(std::equal(p.values().begin(), p.values().end(), r.values().begin()));

  auto pre = p.prefix(40);
  CHECK(pre.n() == 40);
  CHECK(pre.back() == p[40]);

  CHECK_THROWS_AS(SamplePath::read_csv(dir / "missing.csv"), IoError);
  std::filesystem::remove_all(dir);
}
