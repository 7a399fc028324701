#include <doctest.h>

#include <cmath>

#include "mbm/errors.hpp"
#include "mbm/hurst.hpp"

using namespace mbm;

TEST_CASE("constant family is widened") {
  auto h = make_hurst(HurstKind::constant, {0.7});
  CHECK(h(3.0) == 0.7);
  CHECK(h.h2() == 0.7);
  CHECK(h.h1() == doctest::Approx(0.7 - 1e-6).epsilon(1e-15));
  CHECK(h.h1() < h.h2());
  CHECK(h.widened());
  CHECK(certify(h, 5.0, 200).pass);
}

TEST_CASE("sinusoidal family data") {
  auto h = make_hurst(HurstKind::sinusoidal, {0.7, 0.05, 1.0});
  CHECK(h.h1() == doctest::Approx(0.65));
  CHECK(h.h2() == doctest::Approx(0.75));
  CHECK(h.holder_kappa() == 1.0);
  CHECK(h.holder_D() == doctest::Approx(0.05));
  CHECK(h(2.0) == doctest::Approx(0.745464871341284085).epsilon(1e-15));
  CHECK(certify(h, 10.0, 200).pass);
}

TEST_CASE("derived exponents") {
  auto h = HurstFunction::custom([](double) { return 0.7; }, 0.6, 0.8, 0.0, 0.7);
  CHECK(h.h3() == 0.6);
  CHECK(h.h4() == 0.8);
  CHECK(h.h5() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(h.h5() == h.h4() - h.h3());
}

TEST_CASE("range escape is rejected") {
  CHECK_THROWS_AS(make_hurst(HurstKind::sinusoidal, {0.9, 0.2, 1.0}), DomainError);
  CHECK_THROWS_AS(make_hurst(HurstKind::constant, {1.0}), DomainError);
  CHECK_THROWS_AS(make_hurst(HurstKind::constant, {NAN}), DomainError);
  CHECK_THROWS_AS(make_hurst(HurstKind::logistic, {0.3, 1.2, 1.0, 0.0}), DomainError);
}

TEST_CASE("jump fails certification at the straddling pair") {
  auto h = HurstFunction::custom([](double t) { return t < 1.0 ? 0.6 : 0.7; }, 0.6, 0.7, 0.05,
                                 1.0);
  auto rep = certify(h, 2.0, 201);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.holder_ok);
  CHECK(rep.range_ok);
  CHECK(rep.worst_s < 1.0);
  CHECK(rep.worst_t >= 1.0);
  CHECK(rep.worst_t - rep.worst_s == doctest::Approx(0.01));
}

TEST_CASE("every shipped family certifies") {
  const std::vector<HurstFunction> fams{
      make_hurst(HurstKind::constant, {0.55}),
      make_hurst(HurstKind::affine_clipped, {0.6, 0.02, 0.6, 0.8}),
      make_hurst(HurstKind::sinusoidal, {0.75, 0.05, 2.0}),
      make_hurst(HurstKind::logistic, {0.6, 0.8, 1.5, 3.0}),
  };
  for (const auto& h : fams) {
    CHECK(h.h3() <= h.h1());
    CHECK(h.h1() < h.h2());
    CHECK(h.h2() <= h.h4());
    CHECK(h.h5() == h.h4() - h.h3());
    for (double T : {1.0, 7.5, 20.0}) CHECK(certify(h, T, 300).pass);
  }
}

TEST_CASE("descriptor round trip") {
  auto h = parse_hurst("sin:0.7,0.05,1");
  auto j = to_json(h);
  auto g = hurst_from_json(j);
  CHECK(g.kind() == HurstKind::sinusoidal);
  CHECK(g.h1() == h.h1());
  CHECK(g.h2() == h.h2());
  for (double t : {0.0, 0.3, 4.0}) CHECK(g(t) == h(t));
  CHECK_THROWS_AS(parse_hurst("sin:0.7,x"), DomainError);
  CHECK_THROWS_AS(parse_hurst("nope:0.5"), DomainError);
}
