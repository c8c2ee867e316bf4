#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lpres/moduli.hpp"

using namespace lpres;

namespace {
SamplerConfig quick(std::uint64_t seed, std::size_t count = 2000) {
  SamplerConfig s;
  s.seed = seed;
  s.count = count;
  return s;
}
}  // namespace

TEST_CASE("rho estimate stays below tau for tiny tau") {
  for (double p : {1.5, 2.0}) {
    auto space = SpaceDescriptor::lp(3, p);
    CHECK(modulus_smoothness_estimate(space, 1e-8, quick(1, 200)) <= 1e-8);
  }
}

TEST_CASE("rho estimate reaches the Hilbert closed form at tau=1") {
  auto space = SpaceDescriptor::lp(3, 2.0);
  double est = modulus_smoothness_estimate(space, 1.0, quick(2));
  double exact = std::sqrt(2.0) - 1.0;  // sqrt(1+tau^2)-1
  CHECK(est == doctest::Approx(exact).epsilon(1e-4));
  CHECK(est <= exact * (1.0 + 1e-6));
}

TEST_CASE("rho estimate respects the l_p ceiling") {
  auto space = SpaceDescriptor::lp(3, 1.5);
  double est = modulus_smoothness_estimate(space, 0.1, quick(3));
  CHECK(est <= (std::pow(0.1, 1.5) / 1.5) * (1.0 + 1e-6));
}

TEST_CASE("delta estimate closed Hilbert cases") {
  auto space = SpaceDescriptor::lp(3, 2.0);
  CHECK(modulus_convexity_estimate(space, 2.0, quick(4)) ==
        doctest::Approx(1.0).epsilon(1e-6));
  double est = modulus_convexity_estimate(space, 1.0, quick(5));
  CHECK(est == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-3));
  // upper estimate of the infimum: never below the true value
  CHECK(est >= delta_hilbert(1.0) * (1.0 - 1e-6));
}

TEST_CASE("delta estimate small eps bound") {
  for (double p : {1.5, 2.0}) {
    auto space = SpaceDescriptor::lp(2, p);
    double est = modulus_convexity_estimate(space, 0.05, quick(6, 500));
    CHECK(est >= 0.0);
    CHECK(est <= 0.05 / 2.0 + 1e-9);
  }
}

TEST_CASE("K estimate against analytic ceilings") {
  std::vector<double> grid = {0.25, 0.5, 1.0};
  auto hilbert = SpaceDescriptor::lp(3, 2.0);
  CHECK(smoothness_constant_estimate(hilbert, grid, quick(7)) <= 0.5 + 1e-3);
  auto lp = SpaceDescriptor::lp(3, 1.5);
  CHECK(smoothness_constant_estimate(lp, grid, quick(8)) <= 1.0 / 1.5 + 1e-3);
}

TEST_CASE("single point grid is the plain ratio") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  SamplerConfig s = quick(9, 500);
  double est = modulus_smoothness_estimate(space, 0.5, s);
  CHECK(smoothness_constant_estimate(space, {0.5}, s) ==
        doctest::Approx(est / std::pow(0.5, 2.0)).epsilon(1e-12));
}

TEST_CASE("argument validation") {
  auto space = SpaceDescriptor::lp(2, 1.5);
  CHECK_THROWS_AS(modulus_smoothness_estimate(space, 0.0, quick(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(modulus_convexity_estimate(space, 2.5, quick(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(smoothness_constant_estimate(space, {}, quick(1)),
                  std::invalid_argument);
}
