#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lpres/sampler.hpp"
#include "lpres/space.hpp"

using namespace lpres;

namespace {

PrimalVector vec(const SpaceDescriptor& s, std::vector<double> c) {
  return PrimalVector(std::move(c), s);
}

// independent one-line summation oracle for the norm
double norm_oracle(const std::vector<double>& c, double p) {
  double s = 0.0;
  for (double x : c) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST_CASE("norm closed cases") {
  auto h = SpaceDescriptor::lp(2, 2.0);
  CHECK(norm(vec(h, {3, 4})) == doctest::Approx(5.0).epsilon(1e-14));

  auto s = SpaceDescriptor::lp(2, 1.5);
  double expected = std::pow(2.0, 2.0 / 3.0);  // 2^{2/3}
  CHECK(norm(vec(s, {1, 1})) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(norm(vec(s, {1, 1})) ==
        doctest::Approx(norm_oracle({1, 1}, 1.5)).epsilon(1e-15));
  CHECK(norm(zero_primal(s)) == 0.0);
}

TEST_CASE("dual norm and the conjugate exponent") {
  auto h = SpaceDescriptor::lp(2, 2.0);
  CHECK(dual_norm(DualVector({3, 4}, h)) == doctest::Approx(5.0));

  auto s = SpaceDescriptor::lp(2, 1.5);
  CHECK(s.p_conj == doctest::Approx(3.0).epsilon(1e-14));
  double c = std::cbrt(2.0);
  CHECK(dual_norm(DualVector({c, c}, s)) ==
        doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
  CHECK(dual_norm(zero_dual(s)) == 0.0);
}

TEST_CASE("pairing") {
  auto s = SpaceDescriptor::lp(2, 1.5);
  double c = std::cbrt(2.0);
  CHECK(pairing(vec(s, {1, 1}), DualVector({c, c}, s)) ==
        doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-13));
  CHECK(pairing(vec(s, {1, 0}), DualVector({0, 5}, s)) == 0.0);
  auto h = SpaceDescriptor::lp(2, 2.0);
  CHECK(pairing(vec(h, {1, 2}), DualVector({3, 4}, h)) == doctest::Approx(11.0));
  CHECK_THROWS_AS(pairing(vec(h, {1, 2}), DualVector({c, c}, s)),
                  std::invalid_argument);
}

TEST_CASE("duality map closed cases") {
  auto h = SpaceDescriptor::lp(2, 2.0);
  DualVector jh = duality_map(vec(h, {3, 4}));
  CHECK(jh[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(jh[1] == doctest::Approx(4.0).epsilon(1e-14));

  auto s = SpaceDescriptor::lp(2, 1.5);
  DualVector js = duality_map(vec(s, {1, 1}));
  CHECK(js[0] == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));
  CHECK(js[1] == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));

  DualVector j0 = duality_map(zero_primal(s));
  CHECK(dual_norm(j0) == 0.0);
}

TEST_CASE("duality map defining property over random samples") {
  for (double p : {1.1, 1.5, 2.0, 3.0}) {
    auto s = SpaceDescriptor::lp(3, p);
    Sampler gen(s, 7);
    for (int k = 0; k < 10000; ++k) {
      PrimalVector x = gen.ball_point(2.0);
      DualVector jx = duality_map(x);
      double n = norm(x);
      double scale = std::max(1.0, n * n);
      CHECK(std::abs(pairing(x, jx) - n * n) <= 1e-10 * scale);
      CHECK(std::abs(dual_norm(jx) - n) <= 1e-10 * std::max(1.0, n));
    }
  }
}

TEST_CASE("inverse duality map round trip") {
  auto s = SpaceDescriptor::lp(2, 1.5);
  double c = std::cbrt(2.0);
  PrimalVector x = inverse_duality_map(DualVector({c, c}, s));
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));

  for (double p : {1.1, 1.5, 2.0, 2.7}) {
    auto sp = SpaceDescriptor::lp(4, p);
    Sampler gen(sp, 11);
    for (int k = 0; k < 2000; ++k) {
      PrimalVector v = gen.ball_point(3.0);
      PrimalVector back = inverse_duality_map(duality_map(v));
      for (std::size_t i = 0; i < v.dim(); ++i) {
        CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-9));
      }
    }
  }
  PrimalVector z = inverse_duality_map(zero_dual(s));
  CHECK(norm(z) == 0.0);
}

TEST_CASE("homogeneity of J, sign included") {
  auto s = SpaceDescriptor::lp(3, 1.3);
  Sampler gen(s, 3);
  for (int k = 0; k < 1000; ++k) {
    PrimalVector x = gen.ball_point(1.0);
    for (double lam : {2.5, -1.7, 0.3}) {
      DualVector lhs = duality_map(lam * x);
      DualVector rhs = lam * duality_map(x);
      for (std::size_t i = 0; i < x.dim(); ++i) {
        CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("monotonicity of J") {
  auto s = SpaceDescriptor::lp(3, 1.5);
  Sampler gen(s, 5);
  for (int k = 0; k < 5000; ++k) {
    PrimalVector x = gen.ball_point(1.0);
    PrimalVector y = gen.ball_point(1.0);
    CHECK(pairing(x - y, duality_map(x) - duality_map(y)) >= -1e-12);
  }
}

TEST_CASE("bregman phi values and bounds") {
  auto h = SpaceDescriptor::lp(2, 2.0);
  CHECK(bregman_phi(vec(h, {1, 0}), vec(h, {0, 1})) == doctest::Approx(2.0));

  auto s = SpaceDescriptor::lp(2, 1.5);
  PrimalVector x = vec(s, {1, 1});
  CHECK(bregman_phi(x, x) == doctest::Approx(0.0).epsilon(1e-14));
  // three terms evaluated independently
  double expected = std::pow(2.0, 4.0 / 3.0) - 2.0 + 1.0;
  CHECK(bregman_phi(x, vec(s, {1, 0})) == doctest::Approx(expected).epsilon(1e-13));

  Sampler gen(s, 9);
  for (int k = 0; k < 5000; ++k) {
    PrimalVector a = gen.ball_point(2.0);
    PrimalVector b = gen.ball_point(2.0);
    double phi = bregman_phi(a, b);
    double na = norm(a), nb = norm(b);
    CHECK(phi >= 0.0);
    CHECK(phi >= (na - nb) * (na - nb) - 1e-10);
    CHECK(phi <= (na + nb) * (na + nb) + 1e-10);
  }
}

TEST_CASE("p=2 degeneracy") {
  auto h = SpaceDescriptor::lp(5, 2.0);
  Sampler gen(h, 13);
  for (int k = 0; k < 2000; ++k) {
    PrimalVector x = gen.ball_point(1.5);
    PrimalVector y = gen.ball_point(1.5);
    DualVector jx = duality_map(x);
    for (std::size_t i = 0; i < x.dim(); ++i) {
      CHECK(jx[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
    double d = norm(x - y);
    CHECK(bregman_phi(x, y) == doctest::Approx(d * d).epsilon(1e-12));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SpaceDescriptor::lp(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceDescriptor::lp(0, 2.0), std::invalid_argument);
  auto s = SpaceDescriptor::lp(2, 1.5);
  CHECK_THROWS_AS(PrimalVector({1.0, std::nan("")}, s), std::invalid_argument);
  CHECK_THROWS_AS(PrimalVector({1.0}, s), std::invalid_argument);
}
